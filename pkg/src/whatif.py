from dataclasses import dataclass, replace
from typing import List, Optional, Sequence, Union

from loguru import logger

from src.accelerator.optical_core_sim import quantization_error_bound
from src.accelerator.resource_model import ring_counts
from src.accelerator.timing_model import full_system_time
from src.custom_types.enums import RingMode, SweepAxis
from src.custom_types.errors import ConfigError
from src.custom_types.hardware_types import HardwareConfig, QuantSpec
from src.custom_types.layer_types import ConvLayerSpec

Number = Union[int, float]

INTEGER_AXES = (SweepAxis.K, SweepAxis.N_INPUT_DAC, SweepAxis.BITS)


@dataclass(frozen=True)
class SweepRow:
    axis: SweepAxis
    value: Number
    rings_filtered: int
    t_optical: float
    t_full: float
    quant_error_bound: float    # for data in [-1, 1] at the row's bit depth


def parse_axis(name: str) -> SweepAxis:
    if name not in SweepAxis:
        raise ConfigError("--sweep", "axis", f"unknown sweep axis {name!r}, expected one of "
                                             f"{', '.join(axis.value for axis in SweepAxis)}")
    return SweepAxis(name)


def sweep_values(axis: SweepAxis, start: float, stop: float, step: Optional[float] = None) -> List[Number]:
    """Inclusive range from start to stop; integer axes get integer values"""
    step = step if step is not None else 1
    if step <= 0:
        raise ConfigError("--step", "step", "must be positive")
    if stop < start:
        raise ConfigError("--to", "to", "must not be below --from")
    count = int((stop - start) / step + 1e-9) + 1
    values = [start + i * step for i in range(count)]
    if axis in INTEGER_AXES:
        return [int(round(value)) for value in values]
    return [float(value) for value in values]


class SweepManager:
    """Re-evaluates one layer while a single hardware or layer parameter varies"""

    def __init__(self, spec: ConvLayerSpec, hw: HardwareConfig, mode: RingMode = RingMode.PER_CHANNEL_RINGS):
        self.spec = spec
        self.hw = hw
        self.mode = mode

    def _variant(self, axis: SweepAxis, value: Number):
        spec, hw, bits = self.spec, self.hw, self.hw.bits
        try:
            if axis == SweepAxis.K:
                spec = replace(spec, k=int(value))
            elif axis == SweepAxis.N_INPUT_DAC:
                hw = replace(hw, n_input_dac=int(value))
            elif axis == SweepAxis.F_DAC:
                hw = replace(hw, f_dac=float(value))
            elif axis == SweepAxis.BITS:
                bits = int(value)
                hw = replace(hw, bits=bits)
        except ConfigError as e:
            raise ConfigError("--sweep", e.field, f"{e.message} (value {value!r})")
        return spec, hw, bits

    def evaluate(self, axis: SweepAxis, value: Number) -> SweepRow:
        spec, hw, bits = self._variant(axis, value)
        timing = full_system_time(spec, hw)
        row = SweepRow(
            axis=axis,
            value=value,
            rings_filtered=ring_counts(spec, hw, self.mode).rings_filtered,
            t_optical=timing.t_optical,
            t_full=timing.t_full,
            quant_error_bound=quantization_error_bound(spec, QuantSpec(bits=bits)),
        )
        logger.debug(f"sweep {axis.value}={value}: rings={row.rings_filtered} t_full={row.t_full:.4g}s")
        return row

    def sweep(self, axis: SweepAxis, values: Sequence[Number]) -> List[SweepRow]:
        if not values:
            raise ConfigError("--sweep", "values", "sweep needs at least one value")
        return [self.evaluate(axis, value) for value in values]
