"""Execution time of a layer on the optical core alone and on the full system.

Optical core: one clock cycle per kernel location, whatever K is.

Full system: every location passes through three decoupled stages: the input
DACs, one optical MAC cycle and the output ADCs. With the buffers between them
the stages overlap, so a location costs its slowest stage. The kernel weights
are tuned once per layer through the weight DAC; that time is reported on its
own (t_weight_load) and in t_layer. SRAM access hides behind the DAC
conversions. DRAM transfers are not modelled.
"""
import json
import math
from dataclasses import replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Union

from loguru import logger

from src.accelerator.architecture import build_architecture, datapath_stages
from src.accelerator.dataflow_scheduler import check_working_set, incremental_values, location_mix
from src.accelerator.network_model import derive_dims
from src.custom_types.enums import Stage
from src.custom_types.hardware_types import HardwareConfig
from src.custom_types.layer_types import ConvLayerSpec, NetworkSpec
from src.custom_types.report_types import BaselineTable, Speedup, TimingReport
from src.settings.filepaths import BASELINES_PATH


def optical_time(spec: ConvLayerSpec, hw: HardwareConfig) -> float:
    return derive_dims(spec).n_locs / hw.f_clock


def dac_conversions_per_location(spec: ConvLayerSpec, hw: HardwareConfig, row_start: bool) -> int:
    """Sequential conversions each input DAC performs before a location can fire"""
    new_values = derive_dims(spec).n_kernel if row_start else incremental_values(spec)
    return math.ceil(new_values / hw.n_input_dac)


def weight_load_time(spec: ConvLayerSpec, hw: HardwareConfig) -> float:
    weights = spec.k * derive_dims(spec).n_kernel
    return math.ceil(weights / hw.n_weight_dac) / hw.f_dac


def _stage_times(spec: ConvLayerSpec, hw: HardwareConfig, row_start: bool) -> Dict[Stage, float]:
    return {
        Stage.DAC: dac_conversions_per_location(spec, hw, row_start) / hw.f_dac,
        Stage.OPTICAL: 1.0 / hw.f_clock,
        Stage.ADC: math.ceil(spec.k / hw.adcs_for(spec.k)) / hw.f_adc,
    }


def _slowest(times: Dict[Stage, float], order: Sequence[Stage]) -> Stage:
    # ties go to the earliest stage on the datapath
    best = order[0]
    for stage in order[1:]:
        if times[stage] > times[best]:
            best = stage
    return best


def full_system_time(spec: ConvLayerSpec, hw: HardwareConfig) -> TimingReport:
    dims = derive_dims(spec)
    order = datapath_stages(build_architecture(hw))
    row_starts, steady = location_mix(spec)

    rowstart_times = _stage_times(spec, hw, row_start=True)
    steady_times = _stage_times(spec, hw, row_start=False)
    rowstart_cost = max(rowstart_times[stage] for stage in order)
    steady_cost = max(steady_times[stage] for stage in order)
    t_full = row_starts * rowstart_cost + steady * steady_cost
    t_serial = (row_starts * sum(rowstart_times[stage] for stage in order)
                + steady * sum(steady_times[stage] for stage in order))

    bottleneck = _slowest(steady_times if steady else rowstart_times, order)
    working_set = check_working_set(spec, hw)

    report = TimingReport(
        layer_name=spec.name,
        n_locs=dims.n_locs,
        t_optical=optical_time(spec, hw),
        t_cycle=steady_times[Stage.OPTICAL],
        t_dac_steady=steady_times[Stage.DAC],
        t_dac_rowstart=rowstart_times[Stage.DAC],
        t_adc=steady_times[Stage.ADC],
        t_full=t_full,
        t_full_serial=t_serial,
        t_weight_load=weight_load_time(spec, hw),
        bottleneck=bottleneck,
        dac_conversions_steady=dac_conversions_per_location(spec, hw, row_start=False),
        dac_conversions_rowstart=dac_conversions_per_location(spec, hw, row_start=True),
        sram_fits=working_set.fits,
    )
    logger.debug(f"layer {spec.name}: t_optical={report.t_optical:.4g}s t_full={t_full:.4g}s "
                 f"bottleneck={bottleneck.value}")
    return report


def network_timing(network: NetworkSpec, hw: HardwareConfig,
                   reports: Optional[Sequence[TimingReport]] = None) -> Dict[str, float]:
    """Totals for running the layers one after another on the single physical layer.

    Pass the per-layer reports when they are already computed.
    """
    if reports is None:
        reports = [full_system_time(spec, hw) for spec in network.layers]
    return {
        "t_optical": sum(report.t_optical for report in reports),
        "t_full": sum(report.t_full for report in reports),
        "t_layer": sum(report.t_layer for report in reports),
    }


def load_baselines(path: Union[str, Path] = BASELINES_PATH) -> BaselineTable:
    with open(path, "r", encoding="utf-8") as f:
        data = json.load(f)
    return BaselineTable(
        layer_names=tuple(data["layers"]),
        latencies_ms={name: tuple(values) for name, values in data["latencies_ms"].items()},
        source=data.get("source", "paper comparison data"),
    )


def speedup_vs_baselines(reports: List[TimingReport], baselines: BaselineTable) -> Dict[str, Dict[str, Speedup]]:
    """Per layer and per baseline: baseline latency over our full-system and optical-core times"""
    if len(reports) != len(baselines.layer_names):
        raise ValueError(f"length mismatch: {len(reports)} timing reports, "
                         f"{len(baselines.layer_names)} baseline layers")
    speedups = {}
    for index, report in enumerate(reports):
        per_baseline = {}
        for baseline in baselines.baselines:
            latency = baselines.latency_s(baseline, index)
            per_baseline[baseline] = Speedup(
                full=latency / report.t_full,
                optical=latency / report.t_optical,
                layer=latency / report.t_layer,
            )
        speedups[report.layer_name] = per_baseline
    return speedups


def attach_speedups(reports: List[TimingReport], baselines: BaselineTable) -> List[TimingReport]:
    table = speedup_vs_baselines(reports, baselines)
    return [replace(report, speedups=table[report.layer_name]) for report in reports]
