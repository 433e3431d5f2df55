from pytest import mark
from pytest import raises

from src.accelerator.config_loader  import hardware_to_document
from src.accelerator.config_loader  import load_hardware
from src.accelerator.config_loader  import load_network
from src.accelerator.config_loader  import load_tensor
from src.accelerator.config_loader  import parse_hardware
from src.accelerator.config_loader  import parse_network
from src.custom_types.enums         import AdcMode
from src.custom_types.errors        import ConfigError
from src.custom_types.hardware_types import HardwareConfig


def _layer(name="l1", **overrides):
    layer = dict(name=name, n=8, m=3, p=0, s=1, n_c=2, k=4)
    layer.update(overrides)
    return layer


def test_network_file_round_trip(write_json):
    path = write_json("net.json", {"name": "tiny", "layers": [_layer(), _layer("l2", n=6)]})
    network = load_network(path)
    assert network.name == "tiny"
    assert [layer.n for layer in network.layers] == [8, 6]


def test_preset_name_resolves(alexnet):
    assert load_network("alexnet") == alexnet


def test_missing_file():
    with raises(ConfigError, match="file not found"):
        load_network("/nonexistent/network.json")


def test_unreadable_files_become_config_errors(tmp_path):
    binary = tmp_path / "binary.json"
    binary.write_bytes(b"\xff\xfe\x00")
    with raises(ConfigError, match="not UTF-8 text") as error:
        load_network(str(binary))
    assert error.value.path == str(binary)
    with raises(ConfigError) as error:
        load_network(str(tmp_path))
    assert error.value.path == str(tmp_path)


def test_invalid_document(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with raises(ConfigError, match="invalid structured text"):
        load_network(str(path))


def test_empty_layer_list():
    with raises(ConfigError, match="network must contain at least one layer"):
        parse_network({"name": "empty", "layers": []}, "empty.json")


@mark.parametrize("layer field".split(),
                  ((_layer(k=-1),        "layers[0].k"),
                   (_layer(m="3"),       "layers[0].m"),
                   (_layer(extra=1),     "layers[0].extra")))
def test_bad_layer_field_is_named(layer, field):
    with raises(ConfigError) as error:
        parse_network({"name": "bad", "layers": [layer]}, "bad.json")
    assert error.value.path == "bad.json"
    assert error.value.field == field


def test_missing_layer_field_is_named():
    layer = _layer()
    del layer["s"]
    with raises(ConfigError, match=r"bad.json: layers\[0\].s: missing field"):
        parse_network({"name": "bad", "layers": [layer]}, "bad.json")


def test_invalid_geometry_names_the_layer_index():
    layers = [_layer(), _layer("l2", n=2, m=5)]
    with raises(ConfigError, match="kernel exceeds padded input") as error:
        parse_network({"name": "bad", "layers": layers}, "bad.json")
    assert error.value.field.startswith("layers[1].")


def test_duplicate_layer_names_report_the_file():
    with raises(ConfigError, match="duplicate layer name") as error:
        parse_network({"name": "dup", "layers": [_layer(), _layer()]}, "dup.json")
    assert error.value.path == "dup.json"


def test_hardware_defaults_without_file():
    assert load_hardware(None) == HardwareConfig()


def test_partial_hardware_file_keeps_defaults(write_json):
    hw = load_hardware(write_json("hw.json", {"n_input_dac": 20, "adc_mode": "fixed(4)"}))
    assert hw.n_input_dac == 20
    assert hw.adc_mode == AdcMode.FIXED
    assert hw.adc_count == 4
    assert hw.f_dac == 6e9


@mark.parametrize("document field".split(),
                  (({"n_input_dac": 0},        "n_input_dac"),
                   ({"f_dac": "fast"},         "f_dac"),
                   ({"adc_mode": "fixed(0)"},  "adc_mode"),
                   ({"adc_mode": "shared"},    "adc_mode"),
                   ({"adc_count": 3},          "adc_count")))
def test_bad_hardware_field_is_named(document, field):
    with raises(ConfigError) as error:
        parse_hardware(document, "hw.json")
    assert error.value.path == "hw.json"
    assert error.value.field == field


def test_hardware_document_round_trip(write_json):
    hw = parse_hardware({"adc_mode": "fixed(2)", "bits": 12})
    assert load_hardware(write_json("hw.json", hardware_to_document(hw))) == hw


def test_tensor_file(write_json):
    fm = load_tensor(write_json("fm.json", {"extent": [2, 2, 1], "values": [0, 1, 2, 3]}), 3)
    assert fm.extent == (2, 2, 1)
    assert fm.values[1, 0, 0] == 2


def test_tensor_extent_must_match_values(write_json):
    with raises(ConfigError, match="does not match"):
        load_tensor(write_json("k.json", {"extent": [1, 2, 2, 1], "values": [1, 2, 3]}), 4)


def test_tensor_rank_is_checked(write_json):
    with raises(ConfigError) as error:
        load_tensor(write_json("k.json", {"extent": [2, 2], "values": [1, 2, 3, 4]}), 3)
    assert error.value.field == "extent"
