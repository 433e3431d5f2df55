import argparse
import json

import numpy as np
from flask import Flask, jsonify, request
from loguru import logger

from src.accelerator.architecture import architecture_to_dict, build_architecture
from src.accelerator.config_loader import load_network, parse_hardware, parse_network, parse_tensor
from src.accelerator.network_model import preset_names
from src.cli import configure_logging, simulation_document
from src.custom_types.enums import OutputFormat, RingMode
from src.custom_types.errors import ConfigError, ModelError
from src.custom_types.hardware_types import HardwareConfig
from src.custom_types.tensor_types import Tensor3, Tensor4
from src.reporting.report_builder import build_report
from src.reporting.writers import render
from src.utils.JSONEncoder import ReportEncoder
from src.whatif import SweepManager, parse_axis


class ModelServer:
    """JSON API over the accelerator model; every request carries its own network and hardware"""

    def __init__(self):
        self.app = Flask(__name__)
        self.app.json = ReportEncoder(self.app)
        self._register_routes()

    def _register_routes(self):
        self.app.route('/api/network/presets', methods=['GET'])(self.get_presets)
        self.app.route('/api/architecture', methods=['GET', 'POST'])(self.get_architecture)
        self.app.route('/api/report', methods=['POST'])(self.get_report)
        self.app.route('/api/simulate', methods=['POST'])(self.simulate)
        self.app.route('/api/sweep', methods=['POST'])(self.sweep)

    @staticmethod
    def _error(message: str, status: int = 400):
        return jsonify({"status": "error", "message": message}), status

    @staticmethod
    def _network(data):
        network = data.get('network', 'alexnet')
        if isinstance(network, str):
            return load_network(network)
        return parse_network(network, "network")

    @staticmethod
    def _hardware(data) -> HardwareConfig:
        if data.get('hardware') is None:
            return HardwareConfig()
        return parse_hardware(data['hardware'], "hardware")

    @staticmethod
    def _layer(network, data):
        layer = data.get('layer')
        if not layer:
            return network.layers[0]
        try:
            return network.layer(layer)
        except KeyError:
            raise ConfigError("request", "layer", f"network {network.name!r} has no layer named {layer!r}")

    @staticmethod
    def _mode(data) -> RingMode:
        mode = data.get('mode', RingMode.PER_CHANNEL_RINGS.value)
        if mode not in RingMode:
            raise ConfigError("request", "mode", f"unknown ring mode {mode!r}")
        return RingMode(mode)

    def _handle(self, action):
        """Runs one request body through action, mapping model errors to 400"""
        if not request.is_json:
            return self._error("Content-Type must be application/json")
        try:
            return jsonify({"status": "success", **action(request.get_json())}), 200
        except ModelError as e:
            logger.info(f"rejected request to {request.path}: {e}")
            return self._error(str(e))
        except Exception as e:
            logger.exception(f"request to {request.path} failed")
            return self._error(str(e), 500)

    @staticmethod
    def get_presets():
        return jsonify({"presets": preset_names()}), 200

    def get_architecture(self):
        if request.method == 'GET':
            graph = build_architecture(HardwareConfig())
            return jsonify({"status": "success", "networkx_object": architecture_to_dict(graph)}), 200
        return self._handle(lambda data: {
            "networkx_object": architecture_to_dict(build_architecture(self._hardware(data)))})

    def get_report(self):
        def action(data):
            report = build_report(self._network(data), self._hardware(data), self._mode(data))
            # the structured-text writer already yields the full document
            return {"report": json.loads(render(report, OutputFormat.STRUCTURED_TEXT)),
                    "csv": render(report, OutputFormat.CSV)}
        return self._handle(action)

    def simulate(self):
        def action(data):
            network, hw = self._network(data), self._hardware(data)
            spec = self._layer(network, data)
            bits = data.get('bits', hw.bits)
            if isinstance(bits, bool) or not isinstance(bits, int) or bits < 1:
                raise ConfigError("request", "bits", f"must be an integer >= 1, got {bits!r}")
            rng = np.random.default_rng(data.get('seed', 0))
            fm = (parse_tensor(data['input'], 3, "input") if 'input' in data
                  else Tensor3(rng.uniform(-1.0, 1.0, (spec.n, spec.n, spec.n_c))))
            kernels = (parse_tensor(data['kernels'], 4, "kernels") if 'kernels' in data
                       else Tensor4(rng.uniform(-1.0, 1.0, (spec.k, spec.m, spec.m, spec.n_c))))
            return {"simulation": simulation_document(spec, fm, kernels, bits)}
        return self._handle(action)

    def sweep(self):
        def action(data):
            network = self._network(data)
            spec = self._layer(network, data)
            axis = parse_axis(data.get('axis', ''))
            rows = SweepManager(spec, self._hardware(data), self._mode(data)).sweep(axis, data.get('values', []))
            return {"rows": rows}
        return self._handle(action)

    def run(self, debug: bool = False, port: int = 5000):
        self.app.run(debug=debug, port=port)


if __name__ == '__main__':
    parser = argparse.ArgumentParser(description="Serve the accelerator model as a JSON API")
    parser.add_argument("--port", type=int, default=5000)
    parser.add_argument("--debug", action="store_true")
    args = parser.parse_args()
    configure_logging(2 if args.debug else 1)
    ModelServer().run(debug=args.debug, port=args.port)
