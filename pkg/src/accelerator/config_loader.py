import json
import re
from dataclasses import fields
from pathlib import Path
from typing import Any, Dict, Optional, Union

from src.accelerator.network_model import PRESETS, validate_network
from src.custom_types.enums import AdcMode
from src.custom_types.errors import ConfigError, LayerValidationError
from src.custom_types.hardware_types import HardwareConfig
from src.custom_types.layer_types import ConvLayerSpec, NetworkSpec
from src.custom_types.tensor_types import Tensor3, Tensor4

PathLike = Union[str, Path]

NETWORK_FIELDS = ("name", "layers")
LAYER_FIELDS = ("name", "n", "m", "p", "s", "n_c", "k")
TENSOR_FIELDS = ("extent", "values")
HARDWARE_FIELDS = tuple(f.name for f in fields(HardwareConfig) if f.name != "adc_count")

_FIXED_ADC = re.compile(r"^fixed\((\d+)\)$")


def load_document(path: PathLike) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise ConfigError(str(path), None, "file not found")
    except json.JSONDecodeError as e:
        raise ConfigError(str(path), None, f"invalid structured text: {e}")
    except UnicodeDecodeError as e:
        raise ConfigError(str(path), None, f"not UTF-8 text: {e.reason} at byte {e.start}")
    except OSError as e:
        raise ConfigError(str(path), None, e.strerror or str(e))


def _check_fields(path: str, prefix: str, data: Any, allowed, required=()) -> None:
    if not isinstance(data, dict):
        raise ConfigError(path, prefix or None, "must be an object")
    for key in data:
        if key not in allowed:
            raise ConfigError(path, f"{prefix}{key}", "unknown field")
    for key in required:
        if key not in data:
            raise ConfigError(path, f"{prefix}{key}", "missing field")


def _non_negative_int(path: str, field: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ConfigError(path, field, f"must be a non-negative integer, got {value!r}")
    return value


def parse_network(data: Any, source: str = "network") -> NetworkSpec:
    _check_fields(source, "", data, NETWORK_FIELDS, required=NETWORK_FIELDS)
    if not isinstance(data["name"], str) or not data["name"]:
        raise ConfigError(source, "name", "must be a non-empty string")
    if not isinstance(data["layers"], list):
        raise ConfigError(source, "layers", "must be a list")
    if not data["layers"]:
        raise ConfigError(source, "layers", "network must contain at least one layer")

    layers = []
    for index, layer in enumerate(data["layers"]):
        prefix = f"layers[{index}]."
        _check_fields(source, prefix, layer, LAYER_FIELDS, required=LAYER_FIELDS)
        if not isinstance(layer["name"], str) or not layer["name"]:
            raise ConfigError(source, f"{prefix}name", "must be a non-empty string")
        numbers = {key: _non_negative_int(source, f"{prefix}{key}", layer[key])
                   for key in LAYER_FIELDS if key != "name"}
        layers.append(ConvLayerSpec(name=layer["name"], **numbers))

    try:
        network = NetworkSpec(name=data["name"], layers=tuple(layers))
        validate_network(network, source)
        return network
    except LayerValidationError as e:
        index = next(i for i, spec in enumerate(layers) if spec.name == e.layer_name)
        raise ConfigError(source, f"layers[{index}].{','.join(e.fields)}", "; ".join(e.violations))


def load_network(source: PathLike) -> NetworkSpec:
    """Resolve a built-in network name or load a network file"""
    if str(source) in PRESETS:
        return PRESETS[str(source)]()
    return parse_network(load_document(source), str(source))


def parse_hardware(data: Any, source: str = "hardware") -> HardwareConfig:
    _check_fields(source, "", data, HARDWARE_FIELDS)
    values: Dict[str, Any] = dict(data)
    if "adc_mode" in values:
        mode = values["adc_mode"]
        match = _FIXED_ADC.match(mode) if isinstance(mode, str) else None
        if match:
            values["adc_mode"] = AdcMode.FIXED
            values["adc_count"] = int(match.group(1))
        elif mode == AdcMode.PER_KERNEL.value:
            values["adc_mode"] = AdcMode.PER_KERNEL
        else:
            raise ConfigError(source, "adc_mode", f"must be 'per-kernel' or 'fixed(N)', got {mode!r}")
    try:
        return HardwareConfig(**values)
    except ConfigError as e:
        raise ConfigError(source, e.field, e.message)


def load_hardware(path: Optional[PathLike] = None) -> HardwareConfig:
    """Defaults for every field the file omits; no file means all defaults"""
    if path is None:
        return HardwareConfig()
    return parse_hardware(load_document(path), str(path))


def hardware_to_document(hw: HardwareConfig) -> Dict[str, Any]:
    document = {name: getattr(hw, name) for name in HARDWARE_FIELDS}
    document["adc_mode"] = hw.adc_mode_label
    return document


def parse_tensor(data: Any, rank: int, source: str = "tensor") -> Union[Tensor3, Tensor4]:
    _check_fields(source, "", data, TENSOR_FIELDS, required=TENSOR_FIELDS)
    extent, values = data["extent"], data["values"]
    if not isinstance(extent, list) or len(extent) != rank:
        raise ConfigError(source, "extent", f"must list {rank} sizes")
    for axis, size in enumerate(extent):
        if isinstance(size, bool) or not isinstance(size, int) or size < 1:
            raise ConfigError(source, f"extent[{axis}]", f"must be a positive integer, got {size!r}")
    if not isinstance(values, list) or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in values):
        raise ConfigError(source, "values", "must be a flat list of numbers")
    tensor_type = Tensor3 if rank == 3 else Tensor4
    try:
        return tensor_type.from_flat(extent, values)
    except ValueError as e:
        raise ConfigError(source, "values", str(e))


def load_tensor(path: PathLike, rank: int) -> Union[Tensor3, Tensor4]:
    return parse_tensor(load_document(path), rank, str(path))
