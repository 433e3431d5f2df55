"""Bit-true functional model of the broadcast-and-weight MAC datapath.

Per location, input DACs put the receptive field on distinct wavelengths. Each
kernel's microring bank scales every wavelength by one weight, and that bank's
photodiode sums the weighted wavelengths into one photocurrent. The photocurrent
is digitised by the output ADC. Inputs are simulated as signed values (a
mathematical model, not a photometric one). Weights are bounded to [-1, +1] by
the ring transmission, so a layer's kernels are divided by
g = max(1, max|w|) and the outputs are multiplied by g again.

Passing q=None anywhere runs the ideal analog datapath with no quantization.
"""
from typing import Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from src.accelerator.dataflow_scheduler import receptive_field_indices
from src.accelerator.network_model import derive_dims
from src.custom_types.errors import ExtentMismatchError
from src.custom_types.hardware_types import QuantSpec
from src.custom_types.layer_types import ConvLayerSpec
from src.custom_types.tensor_types import Tensor3, Tensor4


def _round_to_level(t: np.ndarray, lo: float, step: float, levels: int) -> np.ndarray:
    """Nearest level index; exact ties go to the level with the larger magnitude"""
    base = np.floor(t)
    frac = t - base
    tie_up = np.abs(lo + (base + 1) * step) >= np.abs(lo + base * step)
    idx = np.where(frac > 0.5, base + 1, np.where(frac < 0.5, base, np.where(tie_up, base + 1, base)))
    return np.clip(idx, 0, levels - 1)


def quantize(x, value_range: Tuple[float, float], bits: int):
    """Clamp to the range and snap to the nearest of 2**bits uniform levels (lo and hi included)"""
    if bits < 1:
        raise ValueError(f"bits must be >= 1, got {bits}")
    lo, hi = value_range
    levels = 2 ** bits
    step = (hi - lo) / (levels - 1)
    clamped = np.clip(np.asarray(x, dtype=np.float64), lo, hi)
    idx = _round_to_level((clamped - lo) / step, lo, step, levels)
    out = np.where(idx == levels - 1, hi, lo + idx * step)
    return float(out) if np.ndim(out) == 0 else out


def quantize_weight(w, bits: int):
    """Sign-magnitude weight grid: |w| on 2**(bits-1) levels over [0, 1], so 0 is exact"""
    w = np.clip(np.asarray(w, dtype=np.float64), -1.0, 1.0)
    magnitude = quantize(np.abs(w), (0.0, 1.0), max(bits - 1, 1))
    out = np.sign(w) * magnitude
    return float(out) if np.ndim(out) == 0 else out


def _accumulate(inputs: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Photodiode sum for every (location, kernel) pair.

    inputs is (L, N), weights is (K, N). Wavelengths are added one at a time in
    a fixed order, so the result does not depend on how many kernels run at once.
    """
    acc = np.zeros((inputs.shape[0], weights.shape[0]))
    for i in range(inputs.shape[1]):
        acc += inputs[:, i, None] * weights[None, :, i]
    return acc


def weight_bank_mac(inputs: Sequence[float], weights: Sequence[float], q: Optional[QuantSpec]) -> float:
    """One microring bank and its photodiode: sum of quantized input times quantized weight"""
    x = np.asarray(inputs, dtype=np.float64)
    w = np.asarray(weights, dtype=np.float64)
    if x.shape != w.shape or x.ndim != 1:
        raise ExtentMismatchError(f"length mismatch: {x.shape[0] if x.ndim else 0} inputs, "
                                  f"{w.shape[0] if w.ndim else 0} weights")
    if q is not None:
        x = quantize(x, q.input_range, q.bits)
        w = quantize_weight(w, q.bits)
    return float(_accumulate(x[None, :], w[None, :])[0, 0])


def _check_extents(fm: Tensor3, kernels: Tensor4, spec: ConvLayerSpec) -> None:
    if fm.extent != (spec.n, spec.n, spec.n_c):
        raise ExtentMismatchError(f"input extent mismatch: expected {[spec.n, spec.n, spec.n_c]}, "
                                  f"got {list(fm.extent)}")
    if kernels.extent != (spec.k, spec.m, spec.m, spec.n_c):
        raise ExtentMismatchError(f"kernel extent mismatch: expected {[spec.k, spec.m, spec.m, spec.n_c]}, "
                                  f"got {list(kernels.extent)}")


def weight_scale(kernels: Tensor4) -> float:
    """Per-layer factor g that brings every kernel value into [-1, +1]"""
    return max(1.0, float(np.max(np.abs(kernels.values)))) if kernels.values.size else 1.0


def _flat_kernels(kernels: Tensor4) -> np.ndarray:
    # (K, m, m, n_c) -> (K, N_kernel) in channel-major, window row-major order
    return np.transpose(kernels.values, (0, 3, 1, 2)).reshape(kernels.values.shape[0], -1)


def _receptive_fields(fm: Tensor3, spec: ConvLayerSpec) -> Tuple[np.ndarray, np.ndarray]:
    x, y, c, padded = receptive_field_indices(spec)
    gathered = fm.values[np.clip(x, 0, spec.n - 1), np.clip(y, 0, spec.n - 1), c]
    return np.where(padded, 0.0, gathered), padded


def output_range_for(spec: ConvLayerSpec, q: QuantSpec, g: float) -> Tuple[float, float]:
    if q.output_range is not None:
        return q.output_range
    bound = derive_dims(spec).n_kernel * g * q.input_max
    return -bound, bound


def simulate_layer(fm: Tensor3, kernels: Tensor4, spec: ConvLayerSpec, q: Optional[QuantSpec]) -> Tensor3:
    """Run every schedule location through the optical MAC; output extent is (o, o, K)"""
    dims = derive_dims(spec)
    _check_extents(fm, kernels, spec)

    g = weight_scale(kernels)
    weights = _flat_kernels(kernels) / g
    fields, padded = _receptive_fields(fm, spec)
    if q is not None:
        # padded positions carry no light, so they stay exactly 0
        fields = np.where(padded, 0.0, quantize(fields, q.input_range, q.bits))
        weights = quantize_weight(weights, q.bits)

    photocurrent = _accumulate(fields, weights)
    if q is not None:
        lo, hi = output_range_for(spec, q, g)
        photocurrent = quantize(photocurrent, (lo / g, hi / g), q.bits)
    out = photocurrent * g
    logger.debug(f"layer {spec.name}: simulated {dims.n_locs} locations x {spec.k} kernels, g={g}")
    return Tensor3(out.reshape(dims.o, dims.o, spec.k))


def reference_conv(fm: Tensor3, kernels: Tensor4, spec: ConvLayerSpec) -> Tensor3:
    """Floating-point cross-correlation with zero padding; sums channel-major, then window row-major"""
    dims = derive_dims(spec)
    _check_extents(fm, kernels, spec)
    padded = np.pad(fm.values, ((spec.p, spec.p), (spec.p, spec.p), (0, 0)))
    span = spec.s * (dims.o - 1) + 1
    out = np.zeros((dims.o, dims.o, spec.k))
    for c in range(spec.n_c):
        for i in range(spec.m):
            for j in range(spec.m):
                window = padded[i:i + span:spec.s, j:j + span:spec.s, c]
                out += window[:, :, None] * kernels.values[:, i, j, c][None, None, :]
    return Tensor3(out)


def calibrate_quant(fm: Tensor3, bits: int) -> QuantSpec:
    """QuantSpec whose symmetric input range just covers the feature map"""
    x_max = float(np.max(np.abs(fm.values))) if fm.values.size else 0.0
    if x_max == 0.0:
        x_max = 1.0
    return QuantSpec(bits=bits, input_range=(-x_max, x_max))


def quantization_error_bound(spec: ConvLayerSpec, q: QuantSpec, g: float = 1.0) -> float:
    """Worst-case |simulate_layer - reference_conv| for data inside q's input range.

    Covers input and weight rounding per wavelength plus half a step of the output ADC.
    """
    n_kernel = derive_dims(spec).n_kernel
    dx, dw, x_max = q.input_step, q.weight_step, q.input_max
    per_mac = n_kernel * g * (dx * 1.0 + dw * x_max + dx * dw)
    lo, hi = output_range_for(spec, q, g)
    adc_half_step = (hi - lo) / (2 ** q.bits - 1) / 2
    return per_mac + adc_half_step
