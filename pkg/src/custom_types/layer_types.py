from dataclasses import dataclass, field
from typing import List, Optional, Tuple


@dataclass(frozen=True)
class ConvLayerSpec:
    """Geometry of one convolution layer (square input face, square kernels)"""
    name: str
    n: int      # input height and width
    m: int      # kernel height and width
    p: int      # zero padding per side
    s: int      # stride
    n_c: int    # input channels
    k: int      # number of kernels

    def as_dict(self) -> dict:
        return {"name": self.name, "n": self.n, "m": self.m, "p": self.p,
                "s": self.s, "n_c": self.n_c, "k": self.k}


@dataclass(frozen=True)
class LayerDims:
    """Sizes derived from a ConvLayerSpec"""
    n_input: int
    n_kernel: int
    o: int          # output height and width
    n_output: int
    n_locs: int
    stride_exact: bool


@dataclass
class ValidationResult:
    valid: bool
    violations: List[str] = field(default_factory=list)
    fields: List[str] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)


@dataclass(frozen=True)
class NetworkSpec:
    name: str
    layers: Tuple[ConvLayerSpec, ...]

    def layer(self, name: str) -> ConvLayerSpec:
        for layer in self.layers:
            if layer.name == name:
                return layer
        raise KeyError(f"network {self.name!r} has no layer named {name!r}")


@dataclass(frozen=True)
class KernelLocation:
    """One position of the kernel set over the (padded) input feature map"""
    index: int
    row: int
    col: int
    top: int        # input-space row of the window, negative inside the padding
    left: int
    new_values: int
    is_row_start: bool


@dataclass(frozen=True)
class ReceptiveCoord:
    x: int          # input row
    y: int          # input column
    c: int
    padded: bool


@dataclass(frozen=True)
class Schedule:
    layer: ConvLayerSpec
    locations: Tuple[KernelLocation, ...]
    total_input_loads: int
    working_set_values: int

    @property
    def reuse_factor(self) -> float:
        """Window values consumed per value actually loaded"""
        return len(self.locations) * self.working_set_values / self.total_input_loads


@dataclass(frozen=True)
class WorkingSetReport:
    fits: bool
    working_set_values: int
    capacity: int
    overflow_factor: Optional[float]    # None when the working set fits
