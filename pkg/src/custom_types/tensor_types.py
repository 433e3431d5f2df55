from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from src.custom_types.errors import ExtentMismatchError


def _as_finite_array(values, ndim: int, kind: str) -> np.ndarray:
    array = np.asarray(values, dtype=np.float64)
    if array.ndim != ndim:
        raise ExtentMismatchError(f"{kind} must have {ndim} axes, got extent {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValueError(f"{kind} values must all be finite")
    return array


@dataclass(frozen=True, eq=False)
class Tensor3:
    """Feature map indexed [x, y, channel]; x is the row axis"""
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_finite_array(self.values, 3, "feature map"))

    @property
    def extent(self) -> Tuple[int, int, int]:
        return tuple(int(d) for d in self.values.shape)

    @classmethod
    def from_flat(cls, extent: Sequence[int], flat: Sequence[float]) -> "Tensor3":
        extent = tuple(extent)
        if len(extent) != 3 or len(flat) != int(np.prod(extent)):
            raise ExtentMismatchError(f"feature map extent {list(extent)} does not match {len(flat)} values")
        return cls(np.asarray(flat, dtype=np.float64).reshape(extent))

    def to_document(self) -> dict:
        return {"extent": list(self.extent), "values": self.values.ravel().tolist()}


@dataclass(frozen=True, eq=False)
class Tensor4:
    """Kernel set indexed [kernel, row, column, channel]"""
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _as_finite_array(self.values, 4, "kernel set"))

    @property
    def extent(self) -> Tuple[int, int, int, int]:
        return tuple(int(d) for d in self.values.shape)

    @classmethod
    def from_flat(cls, extent: Sequence[int], flat: Sequence[float]) -> "Tensor4":
        extent = tuple(extent)
        if len(extent) != 4 or len(flat) != int(np.prod(extent)):
            raise ExtentMismatchError(f"kernel extent {list(extent)} does not match {len(flat)} values")
        return cls(np.asarray(flat, dtype=np.float64).reshape(extent))

    def to_document(self) -> dict:
        return {"extent": list(self.extent), "values": self.values.ravel().tolist()}
