import json

from pytest import fixture

from src.accelerator.network_model   import alexnet_preset
from src.custom_types.hardware_types import HardwareConfig


@fixture(scope="session")
def alexnet():
    return alexnet_preset()


@fixture(scope="session")
def hw():
    return HardwareConfig()


@fixture
def write_json(tmp_path):
    """Writes a document under tmp_path and returns its path as a string"""
    def write(name, document):
        path = tmp_path / name
        path.write_text(json.dumps(document))
        return str(path)
    return write
