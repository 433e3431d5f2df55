from dataclasses import dataclass, field
from typing import Dict, Tuple

from src.custom_types.enums import RingMode, Stage


@dataclass(frozen=True)
class ResourceReport:
    layer_name: str
    ring_mode: RingMode
    rings_unfiltered: int
    rings_filtered: int
    savings_ratio: float
    ring_area_mm2: float
    dac_area_mm2: float         # input and weight DACs together
    sram_area_mm2: float

    @property
    def total_area_mm2(self) -> float:
        return self.ring_area_mm2 + self.dac_area_mm2 + self.sram_area_mm2


@dataclass(frozen=True)
class Speedup:
    full: float         # baseline / t_full
    optical: float      # baseline / t_optical
    layer: float        # baseline / (t_full + weight load)


@dataclass(frozen=True)
class TimingReport:
    layer_name: str
    n_locs: int
    t_optical: float
    t_cycle: float
    t_dac_steady: float
    t_dac_rowstart: float
    t_adc: float
    t_full: float               # pipelined stream over all locations
    t_full_serial: float        # same stream with the stages summed instead of overlapped
    t_weight_load: float        # one-time kernel weight tuning through the weight DAC(s)
    bottleneck: Stage
    dac_conversions_steady: int
    dac_conversions_rowstart: int
    sram_fits: bool
    speedups: Dict[str, Speedup] = field(default_factory=dict)
    dram_excluded: bool = True

    @property
    def t_layer(self) -> float:
        return self.t_full + self.t_weight_load


@dataclass(frozen=True)
class BaselineTable:
    """Per-layer latencies of electronic accelerators, in milliseconds"""
    layer_names: Tuple[str, ...]
    latencies_ms: Dict[str, Tuple[float, ...]]
    source: str = "paper comparison data"

    def __post_init__(self):
        if not self.latencies_ms:
            raise ValueError("baseline table needs at least one baseline")
        for baseline, latencies in self.latencies_ms.items():
            if len(latencies) != len(self.layer_names):
                raise ValueError(f"baseline {baseline!r} has {len(latencies)} entries, "
                                 f"expected {len(self.layer_names)}")
            if any(latency <= 0 for latency in latencies):
                raise ValueError(f"baseline {baseline!r} latencies must be positive")

    @property
    def baselines(self) -> Tuple[str, ...]:
        return tuple(self.latencies_ms)

    def latency_s(self, baseline: str, index: int) -> float:
        return self.latencies_ms[baseline][index] / 1e3
