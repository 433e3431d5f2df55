from typing import List, Optional, Sequence


class ModelError(Exception):
    """Base class for every error raised by the accelerator model"""


class LayerValidationError(ModelError, ValueError):
    """A convolution layer violates one or more geometry invariants"""

    def __init__(self, layer_name: str, violations: Sequence[str], fields: Sequence[str]):
        self.layer_name = layer_name
        self.violations: List[str] = list(violations)
        self.fields: List[str] = list(fields)
        super().__init__(f"layer {layer_name!r} is invalid: {'; '.join(self.violations)}")


class ExtentMismatchError(ModelError, ValueError):
    """A tensor or vector does not have the extent the layer requires"""


class ConfigError(ModelError):
    """A configuration document could not be loaded"""

    def __init__(self, path: str, field: Optional[str], message: str):
        self.path = path
        self.field = field
        self.message = message
        where = f"{path}: {field}" if field else path
        super().__init__(f"{where}: {message}")
