from pytest import fixture

from src.project import ModelServer


@fixture
def client():
    server = ModelServer()
    server.app.config.update(TESTING=True)
    return server.app.test_client()


def test_presets(client):
    response = client.get("/api/network/presets")
    assert response.status_code == 200
    assert response.get_json()["presets"] == ["alexnet", "receptive-field-demo"]


def test_default_architecture(client):
    response = client.get("/api/architecture")
    assert response.status_code == 200
    ids = {node["_id"] for node in response.get_json()["networkx_object"]["nodes"]}
    assert {"input_dac", "mrr_bank", "adc", "weight_dac"} <= ids


def test_architecture_with_hardware(client):
    response = client.post("/api/architecture", json={"hardware": {"adc_mode": "fixed(2)"}})
    nodes = response.get_json()["networkx_object"]["nodes"]
    assert next(node for node in nodes if node["_id"] == "adc")["count"] == "fixed(2)"


def test_report(client):
    response = client.post("/api/report", json={"network": "alexnet", "mode": "spatial-only-rings"})
    assert response.status_code == 200
    body = response.get_json()
    assert body["status"] == "success"
    assert body["report"]["layers"][3]["rings"]["filtered"] == 3456
    assert body["csv"].startswith("layer,n,m,p,s,")


def test_report_with_inline_network(client):
    network = {"name": "tiny", "layers": [{"name": "l1", "n": 8, "m": 3, "p": 1, "s": 1, "n_c": 2, "k": 4}]}
    response = client.post("/api/report", json={"network": network})
    assert response.status_code == 200
    assert response.get_json()["report"]["layers"][0]["dims"]["n_locs"] == 64


def test_report_rejects_empty_network(client):
    response = client.post("/api/report", json={"network": {"name": "empty", "layers": []}})
    assert response.status_code == 400
    assert "network must contain at least one layer" in response.get_json()["message"]


def test_report_requires_json(client):
    response = client.post("/api/report", data="alexnet")
    assert response.status_code == 400
    assert response.get_json()["status"] == "error"


def test_simulate(client):
    network = {"name": "tiny", "layers": [{"name": "l1", "n": 6, "m": 3, "p": 0, "s": 1, "n_c": 2, "k": 3}]}
    response = client.post("/api/simulate", json={"network": network, "bits": 16, "seed": 5})
    assert response.status_code == 200
    simulation = response.get_json()["simulation"]
    assert simulation["passed"]
    assert simulation["output"]["extent"] == [4, 4, 3]


def test_simulate_extent_mismatch(client):
    network = {"name": "tiny", "layers": [{"name": "l1", "n": 6, "m": 3, "p": 0, "s": 1, "n_c": 2, "k": 3}]}
    kernels = {"extent": [3, 2, 2, 2], "values": [0.0] * 24}
    response = client.post("/api/simulate", json={"network": network, "kernels": kernels})
    assert response.status_code == 400
    assert "kernel extent mismatch" in response.get_json()["message"]


def test_simulate_rejects_bad_bits(client):
    response = client.post("/api/simulate", json={"bits": 0})
    assert response.status_code == 400
    assert "bits" in response.get_json()["message"]


def test_sweep(client):
    response = client.post("/api/sweep", json={"layer": "conv4", "axis": "k", "values": [1, 2, 4]})
    assert response.status_code == 200
    rows = response.get_json()["rows"]
    assert [row["rings_filtered"] for row in rows] == [3456, 6912, 13824]
    assert rows[0]["axis"] == "k"


def test_sweep_unknown_layer(client):
    response = client.post("/api/sweep", json={"layer": "conv9", "axis": "k", "values": [1]})
    assert response.status_code == 400
