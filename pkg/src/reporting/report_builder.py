from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from loguru import logger

from src.accelerator.dataflow_scheduler import build_schedule
from src.accelerator.network_model import derive_dims
from src.accelerator.resource_model import provisioned_rings, ring_counts
from src.accelerator.timing_model import attach_speedups, full_system_time, load_baselines, network_timing
from src.custom_types.enums import RingMode
from src.custom_types.hardware_types import HardwareConfig
from src.custom_types.layer_types import ConvLayerSpec, LayerDims, NetworkSpec, Schedule
from src.custom_types.report_types import BaselineTable, ResourceReport, TimingReport


@dataclass(frozen=True)
class LayerRow:
    spec: ConvLayerSpec
    dims: LayerDims
    resources: ResourceReport           # in the requested ring mode
    per_channel: ResourceReport
    spatial_only: ResourceReport
    timing: TimingReport
    schedule: Schedule


@dataclass(frozen=True)
class NetworkReport:
    network: NetworkSpec
    hardware: HardwareConfig
    ring_mode: RingMode
    rows: Tuple[LayerRow, ...]
    baselines: BaselineTable
    speedups_included: bool
    provisioned_layer: str
    provisioned: ResourceReport

    @property
    def totals(self) -> Dict[str, float]:
        return network_timing(self.network, self.hardware, [row.timing for row in self.rows])


def build_layer_row(spec: ConvLayerSpec, hw: HardwareConfig, mode: RingMode) -> LayerRow:
    per_channel = ring_counts(spec, hw, RingMode.PER_CHANNEL_RINGS)
    spatial_only = ring_counts(spec, hw, RingMode.SPATIAL_ONLY_RINGS)
    return LayerRow(
        spec=spec,
        dims=derive_dims(spec),
        resources=per_channel if mode == RingMode.PER_CHANNEL_RINGS else spatial_only,
        per_channel=per_channel,
        spatial_only=spatial_only,
        timing=full_system_time(spec, hw),
        schedule=build_schedule(spec),
    )


def build_report(network: NetworkSpec, hw: HardwareConfig, mode: RingMode = RingMode.PER_CHANNEL_RINGS,
                 baselines: Optional[BaselineTable] = None, workers: int = 1) -> NetworkReport:
    """Evaluate every layer; rows keep the network's layer order whatever the worker count"""
    baselines = baselines or load_baselines()
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        rows: List[LayerRow] = list(pool.map(lambda spec: build_layer_row(spec, hw, mode), network.layers))

    speedups_included = len(rows) == len(baselines.layer_names)
    if speedups_included:
        timings = attach_speedups([row.timing for row in rows], baselines)
        rows = [replace(row, timing=timing) for row, timing in zip(rows, timings)]
    else:
        logger.info(f"network {network.name} has {len(rows)} layers, baseline table has "
                    f"{len(baselines.layer_names)}: speedups omitted")

    provisioned_layer, provisioned = provisioned_rings(network, hw, mode)
    return NetworkReport(network=network, hardware=hw, ring_mode=mode, rows=tuple(rows), baselines=baselines,
                         speedups_included=speedups_included, provisioned_layer=provisioned_layer,
                         provisioned=provisioned)
