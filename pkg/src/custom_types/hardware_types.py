from dataclasses import dataclass, fields
from typing import Optional, Tuple

from src.custom_types.enums import AdcMode
from src.custom_types.errors import ConfigError


@dataclass(frozen=True)
class HardwareConfig:
    """Hardware constants of the accelerator; every field can be overridden from a hardware file"""
    f_clock: float = 5e9                # fast optical clock domain, Hz
    n_input_dac: int = 10
    n_weight_dac: int = 1
    f_dac: float = 6e9                  # Sa/s
    f_adc: float = 2.8e9                # Sa/s
    adc_mode: AdcMode = AdcMode.PER_KERNEL
    adc_count: Optional[int] = None     # only meaningful for AdcMode.FIXED
    sram_value_capacity: int = 8000     # 128 kb of 16 bit values
    t_sram_access: float = 7e-9         # s
    ring_pitch: float = 25e-6           # m, square ring footprint side
    dac_area_mm2: float = 0.52
    sram_area_mm2: float = 0.443
    bits: int = 16

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in ("adc_mode", "adc_count"):
                continue
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError("hardware", f.name, f"must be a number, got {value!r}")
            if f.name != "t_sram_access" and value <= 0:
                raise ConfigError("hardware", f.name, "must be positive")
            if f.name == "t_sram_access" and value < 0:
                raise ConfigError("hardware", f.name, "must not be negative")
        for name in ("n_input_dac", "n_weight_dac", "sram_value_capacity", "bits"):
            if not isinstance(getattr(self, name), int):
                raise ConfigError("hardware", name, "must be an integer")
        if self.adc_mode == AdcMode.FIXED:
            if self.adc_count is None or self.adc_count < 1:
                raise ConfigError("hardware", "adc_mode", "fixed ADC count must be >= 1")
        elif self.adc_count is not None:
            raise ConfigError("hardware", "adc_mode", "per-kernel mode takes no ADC count")

    def adcs_for(self, k: int) -> int:
        """Number of ADCs draining the photodiode outputs of k kernels"""
        if self.adc_mode == AdcMode.PER_KERNEL:
            return k
        return self.adc_count

    @property
    def adc_mode_label(self) -> str:
        if self.adc_mode == AdcMode.FIXED:
            return f"fixed({self.adc_count})"
        return self.adc_mode.value


@dataclass(frozen=True)
class QuantSpec:
    """DAC/ADC resolution and the ranges the converters cover"""
    bits: int = 16
    input_range: Tuple[float, float] = (-1.0, 1.0)
    output_range: Optional[Tuple[float, float]] = None  # None: calibrated per layer
    weight_range: Tuple[float, float] = (-1.0, 1.0)

    def __post_init__(self):
        if isinstance(self.bits, bool) or not isinstance(self.bits, int) or self.bits < 1:
            raise ValueError(f"bits must be an integer >= 1, got {self.bits!r}")
        if tuple(self.weight_range) != (-1.0, 1.0):
            raise ValueError("weight range is fixed to (-1, +1)")
        ranges = [("input_range", self.input_range)]
        if self.output_range is not None:
            ranges.append(("output_range", self.output_range))
        for name, (lo, hi) in ranges:
            if not lo < hi:
                raise ValueError(f"{name} must satisfy lo < hi, got ({lo}, {hi})")

    @property
    def input_step(self) -> float:
        lo, hi = self.input_range
        return (hi - lo) / (2 ** self.bits - 1)

    @property
    def weight_step(self) -> float:
        """Step of the sign-magnitude weight grid"""
        return 1.0 / max(2 ** (self.bits - 1) - 1, 1)

    @property
    def input_max(self) -> float:
        lo, hi = self.input_range
        return max(abs(lo), abs(hi))
