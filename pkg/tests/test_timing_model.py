from dataclasses import replace

from hypothesis            import given
from hypothesis            import settings
from hypothesis.strategies import integers
from pytest                import approx
from pytest                import mark
from pytest                import raises

from src.accelerator.network_model  import derive_dims
from src.accelerator.timing_model   import attach_speedups
from src.accelerator.timing_model   import dac_conversions_per_location
from src.accelerator.timing_model   import full_system_time
from src.accelerator.timing_model   import load_baselines
from src.accelerator.timing_model   import network_timing
from src.accelerator.timing_model   import optical_time
from src.accelerator.timing_model   import speedup_vs_baselines
from src.accelerator.timing_model   import weight_load_time
from src.custom_types.enums         import AdcMode
from src.custom_types.enums         import Stage
from src.custom_types.layer_types   import ConvLayerSpec
from src.custom_types.report_types  import BaselineTable
from . testing_utils                import conv_layers


@mark.parametrize("layer expected".split(),
                  (("conv1", 605e-9),
                   ("conv2", 145.8e-9),
                   ("conv3", 33.8e-9),
                   ("conv4", 33.8e-9),
                   ("conv5", 33.8e-9)))
def test_optical_core_latency(alexnet, hw, layer, expected):
    assert optical_time(alexnet.layer(layer), hw) == approx(expected)


@mark.parametrize("layer rounded".split(),
                  (("conv1", 600e-9), ("conv2", 150e-9), ("conv3", 34e-9), ("conv4", 34e-9), ("conv5", 34e-9)))
def test_optical_latency_near_rounded_figures(alexnet, hw, layer, rounded):
    assert optical_time(alexnet.layer(layer), hw) == approx(rounded, rel=0.05)


@settings(max_examples=1000, deadline=None)
@given(conv_layers(max_n=64, max_k=512), integers(min_value=1, max_value=512))
def test_optical_time_ignores_kernel_count(hw, spec, k):
    assert optical_time(spec, hw) == optical_time(replace(spec, k=k), hw)


def test_conv4_dac_conversions(alexnet, hw):
    conv4 = alexnet.layer("conv4")
    assert dac_conversions_per_location(conv4, hw, row_start=False) == 116
    assert dac_conversions_per_location(conv4, hw, row_start=True) == 346


def test_conv1_dac_conversions(alexnet, hw):
    assert dac_conversions_per_location(alexnet.layer("conv1"), hw, row_start=False) == 14


def test_enough_dacs_convert_in_one_batch(alexnet, hw):
    conv4 = alexnet.layer("conv4")
    assert dac_conversions_per_location(conv4, replace(hw, n_input_dac=4000), row_start=True) == 1


def test_conv4_steady_state_is_dac_bound(alexnet, hw):
    report = full_system_time(alexnet.layer("conv4"), hw)
    assert report.t_dac_steady == approx(19.33e-9, rel=1e-3)
    assert report.t_cycle == approx(0.2e-9)
    assert report.t_adc == approx(1 / 2.8e9)
    assert report.bottleneck == Stage.DAC
    assert report.t_full == approx(13 * 346 / 6e9 + 156 * 116 / 6e9)


def test_small_layer_with_one_adc_is_adc_bound(hw):
    spec = ConvLayerSpec("small", n=6, m=3, p=0, s=1, n_c=1, k=1)
    report = full_system_time(spec, replace(hw, adc_mode=AdcMode.FIXED, adc_count=1))
    assert report.bottleneck == Stage.ADC


@mark.parametrize("n_c bottleneck".split(), ((20, Stage.ADC), (21, Stage.DAC)))
def test_dac_becomes_the_bottleneck_above_twenty_new_values(hw, n_c, bottleneck):
    # 20 values need 2 conversions (0.33 ns), under the 0.357 ns ADC sample; 21 need 3
    spec = ConvLayerSpec("edge", n=4, m=1, p=0, s=1, n_c=n_c, k=4)
    assert full_system_time(spec, hw).bottleneck == bottleneck


def test_slow_optical_clock_is_the_bottleneck(hw):
    spec = ConvLayerSpec("slow", n=6, m=1, p=0, s=1, n_c=1, k=1)
    assert full_system_time(spec, replace(hw, f_clock=1e9)).bottleneck == Stage.OPTICAL


def test_fixed_adc_pool_can_dominate(alexnet, hw):
    report = full_system_time(alexnet.layer("conv4"), replace(hw, adc_mode=AdcMode.FIXED, adc_count=4))
    assert report.t_adc == approx(96 / 2.8e9)
    assert report.bottleneck == Stage.ADC


def test_conv1_full_system_exceeds_optical_core(alexnet, hw):
    report = full_system_time(alexnet.layer("conv1"), hw)
    assert report.t_full / report.t_optical >= 10
    assert report.t_full == approx(7.269e-6, rel=1e-3)
    assert report.t_full_serial >= report.t_full


def test_weight_load_is_reported_separately(alexnet, hw):
    conv4 = alexnet.layer("conv4")
    report = full_system_time(conv4, hw)
    assert weight_load_time(conv4, hw) == approx(384 * 3456 / 6e9)
    assert report.t_weight_load == approx(221.184e-6)
    assert report.t_layer == approx(report.t_full + report.t_weight_load)
    assert report.dram_excluded


@settings(max_examples=200, deadline=None)
@given(conv_layers(max_n=64, max_c=64), integers(min_value=1, max_value=64), integers(min_value=1, max_value=64))
def test_more_dacs_never_slow_the_layer_down(hw, spec, a, b):
    few, many = sorted((a, b))
    assert full_system_time(spec, replace(hw, n_input_dac=many)).t_full <= \
           full_system_time(spec, replace(hw, n_input_dac=few)).t_full


@settings(max_examples=300, deadline=None)
@given(conv_layers(max_n=64, max_c=64, max_k=64))
def test_pipelined_time_lies_between_stage_sums_and_serial_sum(hw, spec):
    report = full_system_time(spec, hw)
    row_starts = derive_dims(spec).o
    steady = report.n_locs - row_starts
    dac_sum = row_starts * report.t_dac_rowstart + steady * report.t_dac_steady
    adc_sum = report.n_locs * report.t_adc
    lower = max(dac_sum, adc_sum, report.t_optical)
    upper = dac_sum + adc_sum + report.n_locs / hw.f_clock + report.t_weight_load
    assert lower <= report.t_full * (1 + 1e-12)
    assert report.t_full <= upper * (1 + 1e-12)
    assert report.t_full <= report.t_full_serial * (1 + 1e-12)


@settings(max_examples=300, deadline=None)
@given(conv_layers(max_n=64, max_c=64), integers(min_value=1, max_value=64))
def test_more_channels_never_speed_the_layer_up(hw, spec, extra):
    assert full_system_time(replace(spec, n_c=spec.n_c + extra), hw).t_full >= full_system_time(spec, hw).t_full


@settings(max_examples=300, deadline=None)
@given(conv_layers(max_n=64, max_c=64), integers(min_value=1, max_value=200), integers(min_value=1, max_value=200))
def test_faster_dacs_never_slow_the_layer_down(hw, spec, a, b):
    slow, fast = sorted((a, b))
    assert full_system_time(spec, replace(hw, f_dac=fast * 1e8)).t_full <= \
           full_system_time(spec, replace(hw, f_dac=slow * 1e8)).t_full

def test_network_totals(alexnet, hw):
    totals = network_timing(alexnet, hw)
    assert totals["t_optical"] == approx((3025 + 729 + 3 * 169) / 5e9)
    assert totals["t_layer"] > totals["t_full"] > totals["t_optical"]


def test_baseline_table():
    baselines = load_baselines()
    assert baselines.layer_names == ("conv1", "conv2", "conv3", "conv4", "conv5")
    assert baselines.baselines == ("eyeriss", "yodann")
    assert baselines.source == "paper comparison data"
    assert baselines.latency_s("eyeriss", 2) == approx(23.6e-3)


def test_conv3_optical_speedup_over_eyeriss(alexnet, hw):
    reports = [full_system_time(spec, hw) for spec in alexnet.layers]
    speedups = speedup_vs_baselines(reports, load_baselines())
    assert speedups["conv3"]["eyeriss"].optical == approx(7.0e5, rel=0.01)
    assert speedups["conv1"]["eyeriss"].full >= 1e3


def test_speedup_orders_of_magnitude(alexnet, hw):
    reports = attach_speedups([full_system_time(spec, hw) for spec in alexnet.layers], load_baselines())
    for report in reports[1:]:
        for baseline in ("eyeriss", "yodann"):
            assert report.speedups[baseline].full >= 1e3
    for report in reports[2:]:
        for baseline in ("eyeriss", "yodann"):
            assert report.speedups[baseline].optical >= 1e5


def test_identical_latency_gives_unit_speedup(hw):
    spec = ConvLayerSpec("one", n=8, m=3, p=0, s=1, n_c=2, k=2)
    report = full_system_time(spec, hw)
    table = BaselineTable(layer_names=("one",), latencies_ms={"same": (report.t_full * 1e3,)})
    assert speedup_vs_baselines([report], table)["one"]["same"].full == approx(1.0)


def test_speedup_length_mismatch(alexnet, hw):
    reports = [full_system_time(alexnet.layer("conv1"), hw)]
    with raises(ValueError, match="length mismatch"):
        speedup_vs_baselines(reports, load_baselines())


def test_baseline_table_rejects_short_rows():
    with raises(ValueError):
        BaselineTable(layer_names=("a", "b"), latencies_ms={"x": (1.0,)})
