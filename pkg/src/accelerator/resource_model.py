"""Microring counts and ring-bank area.

Without filtering, every input value is a wavelength that every kernel weight
must be able to pick, giving N_input * K * N_kernel rings. Filtering the input down to the
receptive field leaves K * N_kernel rings. That is the default per-channel-rings
mode. The spatial-only-rings mode counts one ring set of m*m per kernel with
the channels time-multiplexed onto it, which is how the 3456-ring conv4 bank
is sized.
"""
from typing import Tuple

from src.accelerator.network_model import derive_dims
from src.custom_types.enums import RingMode
from src.custom_types.hardware_types import HardwareConfig
from src.custom_types.layer_types import ConvLayerSpec, NetworkSpec
from src.custom_types.report_types import ResourceReport


def filtered_rings(spec: ConvLayerSpec, mode: RingMode) -> int:
    dims = derive_dims(spec)
    if mode == RingMode.SPATIAL_ONLY_RINGS:
        return spec.k * spec.m * spec.m
    return spec.k * dims.n_kernel


def ring_area_mm2(rings: int, hw: HardwareConfig) -> float:
    pitch_mm = hw.ring_pitch * 1e3
    return rings * (pitch_mm * pitch_mm)


def ring_counts(spec: ConvLayerSpec, hw: HardwareConfig,
                mode: RingMode = RingMode.PER_CHANNEL_RINGS) -> ResourceReport:
    dims = derive_dims(spec)
    unfiltered = dims.n_input * spec.k * dims.n_kernel
    filtered = filtered_rings(spec, mode)
    return ResourceReport(
        layer_name=spec.name,
        ring_mode=mode,
        rings_unfiltered=unfiltered,
        rings_filtered=filtered,
        savings_ratio=unfiltered / filtered,
        ring_area_mm2=ring_area_mm2(filtered, hw),
        dac_area_mm2=(hw.n_input_dac + hw.n_weight_dac) * hw.dac_area_mm2,
        sram_area_mm2=hw.sram_area_mm2,
    )


def provisioned_rings(network: NetworkSpec, hw: HardwareConfig,
                      mode: RingMode = RingMode.PER_CHANNEL_RINGS) -> Tuple[str, ResourceReport]:
    """The single physical layer is reused for every layer, so it is sized by the largest one"""
    reports = [ring_counts(spec, hw, mode) for spec in network.layers]
    largest = max(reports, key=lambda report: report.rings_filtered)
    return largest.layer_name, largest
