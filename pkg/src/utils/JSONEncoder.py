import dataclasses
import json
from enum import Enum

import numpy as np
from flask.json.provider import DefaultJSONProvider


def to_jsonable(obj):
    """Plain-JSON form of the model's dataclasses, enums, sets and numpy values"""
    if isinstance(obj, Enum):
        return obj.value
    if hasattr(obj, "to_document"):
        return obj.to_document()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(to_jsonable(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, set):
        return sorted(to_jsonable(v) for v in obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


class ReportEncoder(DefaultJSONProvider):
    sort_keys = False

    def default(self, obj):
        converted = to_jsonable(obj)
        if converted is obj:
            return json.JSONEncoder.default(self, obj)
        return converted
