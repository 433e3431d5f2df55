from pytest import approx
from pytest import raises

from src.custom_types.enums  import SweepAxis
from src.custom_types.errors import ConfigError
from src.whatif              import SweepManager
from src.whatif              import parse_axis
from src.whatif              import sweep_values


def test_kernel_sweep_keeps_optical_time(alexnet, hw):
    rows = SweepManager(alexnet.layer("conv3"), hw).sweep(SweepAxis.K, list(range(1, 11)))
    assert len({row.t_optical for row in rows}) == 1


def test_kernel_sweep_scales_rings(alexnet, hw):
    rows = SweepManager(alexnet.layer("conv3"), hw).sweep(SweepAxis.K, list(range(1, 11)))
    assert [row.rings_filtered for row in rows] == [k * rows[0].rings_filtered for k in range(1, 11)]


def test_dac_sweep_never_slows_conv4(alexnet, hw):
    rows = SweepManager(alexnet.layer("conv4"), hw).sweep(SweepAxis.N_INPUT_DAC, [1, 2, 5, 10, 20])
    times = [row.t_full for row in rows]
    assert times == sorted(times, reverse=True)


def test_faster_dacs_shorten_conv4(alexnet, hw):
    rows = SweepManager(alexnet.layer("conv4"), hw).sweep(SweepAxis.F_DAC, [6e9, 12e9])
    assert rows[1].t_full == approx(rows[0].t_full / 2)


def test_bit_sweep_tightens_the_bound(alexnet, hw):
    rows = SweepManager(alexnet.layer("conv1"), hw).sweep(SweepAxis.BITS, [8, 12, 16])
    bounds = [row.quant_error_bound for row in rows]
    assert bounds[0] > bounds[1] > bounds[2]


def test_invalid_sweep_value_is_reported(alexnet, hw):
    with raises(ConfigError, match="value 0"):
        SweepManager(alexnet.layer("conv4"), hw).sweep(SweepAxis.N_INPUT_DAC, [10, 0])


def test_empty_sweep(alexnet, hw):
    with raises(ConfigError, match="at least one value"):
        SweepManager(alexnet.layer("conv4"), hw).sweep(SweepAxis.K, [])


def test_parse_axis():
    assert parse_axis("f_dac") == SweepAxis.F_DAC
    with raises(ConfigError, match="unknown sweep axis"):
        parse_axis("pitch")


def test_sweep_values_are_inclusive():
    assert sweep_values(SweepAxis.K, 1, 10) == list(range(1, 11))
    assert sweep_values(SweepAxis.F_DAC, 1e9, 3e9, 1e9) == [1e9, 2e9, 3e9]
    assert all(isinstance(v, int) for v in sweep_values(SweepAxis.BITS, 4, 16, 4))


def test_sweep_values_reject_bad_ranges():
    with raises(ConfigError):
        sweep_values(SweepAxis.K, 5, 1)
    with raises(ConfigError):
        sweep_values(SweepAxis.K, 1, 5, 0)
