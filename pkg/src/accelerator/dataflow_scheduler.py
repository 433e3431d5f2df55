"""Kernel-parallel, location-sequential schedule of a convolution layer.

All K kernels share one receptive field, so the layer is a row-major walk over
the output grid. The first location of every output row reloads the whole
window; every other location only loads the columns the horizontal slide
uncovers (n_c * m * s values, capped at the window width when s > m).
"""
from typing import List, Tuple

import numpy as np
from loguru import logger

from src.accelerator.network_model import derive_dims
from src.custom_types.hardware_types import HardwareConfig
from src.custom_types.layer_types import (ConvLayerSpec, KernelLocation, ReceptiveCoord, Schedule,
                                          WorkingSetReport)


def incremental_values(spec: ConvLayerSpec) -> int:
    """Input values loaded by a slide that stays on the same output row"""
    return spec.n_c * spec.m * min(spec.s, spec.m)


def location_mix(spec: ConvLayerSpec) -> Tuple[int, int]:
    """(row-start locations, steady-state locations)"""
    o = derive_dims(spec).o
    return o, o * (o - 1)


def expected_total_input_loads(spec: ConvLayerSpec) -> int:
    dims = derive_dims(spec)
    row_starts, steady = location_mix(spec)
    return row_starts * dims.n_kernel + steady * incremental_values(spec)


def build_schedule(spec: ConvLayerSpec) -> Schedule:
    dims = derive_dims(spec)
    step = incremental_values(spec)
    locations = []
    for row in range(dims.o):
        for col in range(dims.o):
            is_row_start = col == 0
            locations.append(KernelLocation(
                index=row * dims.o + col,
                row=row,
                col=col,
                top=row * spec.s - spec.p,
                left=col * spec.s - spec.p,
                new_values=dims.n_kernel if is_row_start else step,
                is_row_start=is_row_start,
            ))
    total = sum(loc.new_values for loc in locations)
    logger.debug(f"layer {spec.name}: {len(locations)} locations, {total} input loads")
    return Schedule(layer=spec, locations=tuple(locations), total_input_loads=total,
                    working_set_values=dims.n_kernel)


def receptive_field_coords(loc: KernelLocation, spec: ConvLayerSpec) -> List[ReceptiveCoord]:
    """Window coordinates in MAC order: channel-major, then window row-major"""
    coords = []
    for c in range(spec.n_c):
        for i in range(spec.m):
            x = loc.top + i
            for j in range(spec.m):
                y = loc.left + j
                padded = not (0 <= x < spec.n and 0 <= y < spec.n)
                coords.append(ReceptiveCoord(x=x, y=y, c=c, padded=padded))
    return coords


def receptive_field_indices(spec: ConvLayerSpec) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised receptive_field_coords for every location of the row-major schedule.

    Returns x, y, c and padded arrays of shape (N_locs, N_kernel).
    """
    dims = derive_dims(spec)
    grid = np.arange(dims.o)
    tops = np.repeat(grid * spec.s - spec.p, dims.o)
    lefts = np.tile(grid * spec.s - spec.p, dims.o)

    c, i, j = np.meshgrid(np.arange(spec.n_c), np.arange(spec.m), np.arange(spec.m), indexing="ij")
    c, i, j = c.ravel(), i.ravel(), j.ravel()

    x = tops[:, None] + i[None, :]
    y = lefts[:, None] + j[None, :]
    c = np.broadcast_to(c, x.shape)
    padded = (x < 0) | (x >= spec.n) | (y < 0) | (y >= spec.n)
    return x, y, c, padded


def check_working_set(spec: ConvLayerSpec, hw: HardwareConfig) -> WorkingSetReport:
    n_kernel = derive_dims(spec).n_kernel
    fits = n_kernel <= hw.sram_value_capacity
    overflow = None if fits else n_kernel / hw.sram_value_capacity
    if not fits:
        logger.warning(f"layer {spec.name}: working set of {n_kernel} values exceeds SRAM capacity "
                       f"{hw.sram_value_capacity} (overflow x{overflow:.3g})")
    return WorkingSetReport(fits=fits, working_set_values=n_kernel, capacity=hw.sram_value_capacity,
                            overflow_factor=overflow)
