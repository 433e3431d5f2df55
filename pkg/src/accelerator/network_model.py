"""Convolution layer geometry, derived sizes and the built-in networks.

The AlexNet preset is inferred: the layer table is never listed in full, so it
is rebuilt from the conv1 input/kernel shapes, the conv4 DAC arithmetic and the
published optical-core latencies. conv2, conv4 and conv5 are ungrouped and conv1
uses p=2, which is what gives a 55x55 output grid.
"""
from typing import Iterable, List

from loguru import logger

from src.custom_types.errors import ConfigError, LayerValidationError
from src.custom_types.layer_types import ConvLayerSpec, LayerDims, NetworkSpec, ValidationResult

_POSITIVE_FIELDS = ("n", "m", "s", "n_c", "k")


def validate_layer(spec: ConvLayerSpec) -> ValidationResult:
    """Check every ConvLayerSpec invariant and collect the ones that fail"""
    result = ValidationResult(valid=True)

    for name in _POSITIVE_FIELDS:
        value = getattr(spec, name)
        if isinstance(value, bool) or not isinstance(value, int):
            result.violations.append(f"{name} must be an integer, got {value!r}")
            result.fields.append(name)
        elif value < 1:
            result.violations.append(f"{name} must be >= 1, got {value}")
            result.fields.append(name)
    if isinstance(spec.p, bool) or not isinstance(spec.p, int):
        result.violations.append(f"p must be an integer, got {spec.p!r}")
        result.fields.append("p")
    elif spec.p < 0:
        result.violations.append(f"p must be >= 0, got {spec.p}")
        result.fields.append("p")

    if not result.fields and spec.m > spec.n + 2 * spec.p:
        result.violations.append(
            f"kernel exceeds padded input: m={spec.m} > n+2p={spec.n + 2 * spec.p}")
        result.fields.extend(["m", "n", "p"])

    if result.violations:
        result.valid = False
        return result

    span = spec.n + 2 * spec.p - spec.m
    if span % spec.s != 0:
        warning = f"stride_exact=false: (n+2p-m)={span} is not divisible by s={spec.s}, output size is floored"
        result.warnings.append(warning)
    return result


def _require_valid(spec: ConvLayerSpec) -> ValidationResult:
    result = validate_layer(spec)
    if not result.valid:
        raise LayerValidationError(spec.name, result.violations, result.fields)
    return result


def output_extent(spec: ConvLayerSpec) -> int:
    return (spec.n + 2 * spec.p - spec.m) // spec.s + 1


def derive_dims(spec: ConvLayerSpec) -> LayerDims:
    _require_valid(spec)
    o = output_extent(spec)
    n_locs = o * o
    return LayerDims(
        n_input=spec.n * spec.n * spec.n_c,
        n_kernel=spec.m * spec.m * spec.n_c,
        o=o,
        n_output=n_locs * spec.k,
        n_locs=n_locs,
        stride_exact=(spec.n + 2 * spec.p - spec.m) % spec.s == 0,
    )


def validate_network(network: NetworkSpec, source: str = "network") -> None:
    """Raise ConfigError / LayerValidationError unless every network invariant holds"""
    if not network.layers:
        raise ConfigError(source, "layers", "network must contain at least one layer")
    seen = set()
    for spec in network.layers:
        if spec.name in seen:
            raise ConfigError(source, "layers", f"duplicate layer name {spec.name!r}")
        seen.add(spec.name)
        for warning in _require_valid(spec).warnings:
            logger.warning(f"layer {spec.name}: {warning}")


def make_network(name: str, layers: Iterable[ConvLayerSpec]) -> NetworkSpec:
    network = NetworkSpec(name=name, layers=tuple(layers))
    validate_network(network, source=name)
    return network


def alexnet_preset() -> NetworkSpec:
    """The five ungrouped AlexNet convolution layers"""
    return make_network("alexnet", [
        ConvLayerSpec("conv1", n=224, m=11, p=2, s=4, n_c=3, k=96),
        ConvLayerSpec("conv2", n=27, m=5, p=2, s=1, n_c=96, k=256),
        ConvLayerSpec("conv3", n=13, m=3, p=1, s=1, n_c=256, k=384),
        ConvLayerSpec("conv4", n=13, m=3, p=1, s=1, n_c=384, k=384),
        ConvLayerSpec("conv5", n=13, m=3, p=1, s=1, n_c=384, k=256),
    ])


def receptive_field_demo_preset() -> NetworkSpec:
    """16x16 single-channel input with five 3x3 kernels, the ring-filtering illustration"""
    return make_network("receptive-field-demo", [
        ConvLayerSpec("demo", n=16, m=3, p=0, s=1, n_c=1, k=5),
    ])


PRESETS = {
    "alexnet": alexnet_preset,
    "receptive-field-demo": receptive_field_demo_preset,
}


def preset_names() -> List[str]:
    return sorted(PRESETS)
