"""Command line for the photonic convolution accelerator model.

    python -m src.cli report   --network alexnet --mode spatial-only-rings --format table
    python -m src.cli simulate --network alexnet --layer conv3 --bits 16 --seed 7 --out conv3.json
    python -m src.cli sweep    --network alexnet --layer conv4 --sweep n_input_dac --values 1 2 5 10 20

Exit codes: 0 success, 2 configuration error, 3 simulation outside the quantization bound.

Report CSV columns, in order:
    layer,n,m,p,s,n_c,k,n_input,n_kernel,o,n_locs,ring_mode,rings_unfiltered,
    rings_filtered,rings_per_channel,rings_spatial_only,savings_ratio,ring_area_mm2,
    t_optical_s,t_full_s,t_full_serial_s,t_weight_load_s,t_layer_s,bottleneck,
    dac_conversions_steady,speedup_eyeriss_full,speedup_eyeriss_optical,
    speedup_yodann_full,speedup_yodann_optical
Sweep CSV columns: axis,value,rings_filtered,t_optical_s,t_full_s,quant_error_bound
Reals are printed as %.6e and times are in seconds.
"""
import argparse
import json
import sys
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from loguru import logger

from src.accelerator.config_loader import load_hardware, load_network, load_tensor
from src.accelerator.optical_core_sim import (calibrate_quant, quantization_error_bound, reference_conv,
                                              simulate_layer, weight_scale)
from src.custom_types.enums import Command, OutputFormat, RingMode, SweepAxis
from src.custom_types.errors import ConfigError, ModelError
from src.custom_types.layer_types import ConvLayerSpec, NetworkSpec
from src.custom_types.tensor_types import Tensor3, Tensor4
from src.reporting.report_builder import build_report
from src.reporting.writers import render, sweep_to_csv
from src.whatif import SweepManager, parse_axis, sweep_values

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_TOLERANCE = 3


@dataclass
class RunRequest:
    command: Command
    network_path: str
    hardware_path: Optional[str] = None
    mode: RingMode = RingMode.PER_CHANNEL_RINGS
    output_path: Optional[str] = None       # None writes to stdout
    format: OutputFormat = OutputFormat.TABLE
    workers: int = 1
    layer: Optional[str] = None
    input_path: Optional[str] = None
    kernels_path: Optional[str] = None
    bits: Optional[int] = None
    seed: int = 0
    sweep_axis: Optional[str] = None
    sweep_from: Optional[float] = None
    sweep_to: Optional[float] = None
    sweep_step: Optional[float] = None
    sweep_values: Optional[List[float]] = None

    def __post_init__(self):
        if not self.network_path:
            raise ConfigError("--network", None, "a network file or built-in name is required")
        for option, value in (("--hardware", self.hardware_path), ("--out", self.output_path),
                              ("--input", self.input_path), ("--kernels", self.kernels_path)):
            if value is not None and not value:
                raise ConfigError(option, None, "path must not be empty")
        if self.command == Command.SWEEP and self.sweep_axis is None:
            raise ConfigError("--sweep", None, "sweep needs an axis")
        if self.bits is not None and self.bits < 1:
            raise ConfigError("--bits", None, f"must be >= 1, got {self.bits}")


def configure_logging(verbosity: int) -> None:
    level = {0: "WARNING", 1: "INFO"}.get(verbosity, "DEBUG")
    logger.remove()
    logger.add(sys.stderr, level=level, format="{level}: {message}")
    logger.enable("src")


def _parse_choice(enum_type, value: str, option: str):
    if value not in enum_type:
        choices = ", ".join(member.value for member in enum_type)
        raise ConfigError(option, None, f"unknown value {value!r}, expected one of {choices}")
    return enum_type(value)


def _emit(text: str, output_path: Optional[str]) -> None:
    if output_path:
        try:
            with open(output_path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
        except OSError as e:
            raise ConfigError("--out", None, f"cannot write {output_path}: {e.strerror or e}")
    else:
        sys.stdout.write(text)


def _select_layer(network: NetworkSpec, name: Optional[str]) -> ConvLayerSpec:
    if name is None:
        return network.layers[0]
    try:
        return network.layer(name)
    except KeyError:
        raise ConfigError("--layer", None, f"network {network.name!r} has no layer named {name!r}")


def run_report(req: RunRequest) -> int:
    network = load_network(req.network_path)
    hw = load_hardware(req.hardware_path)
    report = build_report(network, hw, req.mode, workers=req.workers)
    _emit(render(report, req.format), req.output_path)
    return EXIT_OK


def _simulation_inputs(req: RunRequest, spec: ConvLayerSpec):
    rng = np.random.default_rng(req.seed)
    if req.input_path:
        fm = load_tensor(req.input_path, 3)
    else:
        fm = Tensor3(rng.uniform(-1.0, 1.0, (spec.n, spec.n, spec.n_c)))
    if req.kernels_path:
        kernels = load_tensor(req.kernels_path, 4)
    else:
        kernels = Tensor4(rng.uniform(-1.0, 1.0, (spec.k, spec.m, spec.m, spec.n_c)))
    return fm, kernels


def simulation_document(spec: ConvLayerSpec, fm: Tensor3, kernels: Tensor4, bits: int) -> dict:
    """Runs the quantized datapath and the reference convolution on the same data"""
    q = calibrate_quant(fm, bits)
    simulated = simulate_layer(fm, kernels, spec, q)
    oracle = reference_conv(fm, kernels, spec)
    deviation = np.abs(simulated.values - oracle.values)
    bound = quantization_error_bound(spec, q, weight_scale(kernels))
    max_dev, mean_dev = float(deviation.max()), float(deviation.mean())
    return {
        "layer": spec.as_dict(),
        "bits": q.bits,
        "input_range": list(q.input_range),
        "weight_scale": weight_scale(kernels),
        "max_abs_deviation": max_dev,
        "mean_abs_deviation": mean_dev,
        "bound": bound,
        "passed": max_dev <= bound,
        "output": simulated.to_document(),
        "oracle": oracle.to_document(),
    }


def run_simulate(req: RunRequest) -> int:
    network = load_network(req.network_path)
    hw = load_hardware(req.hardware_path)
    spec = _select_layer(network, req.layer)
    fm, kernels = _simulation_inputs(req, spec)
    document = simulation_document(spec, fm, kernels, req.bits or hw.bits)
    _emit(json.dumps(document, indent=2) + "\n", req.output_path)

    max_dev, bound = document["max_abs_deviation"], document["bound"]
    if not document["passed"]:
        logger.warning(f"layer {spec.name}: max deviation {max_dev:.3e} exceeds bound {bound:.3e}")
        return EXIT_TOLERANCE
    logger.info(f"layer {spec.name}: max deviation {max_dev:.3e} within bound {bound:.3e}")
    return EXIT_OK


def run_sweep(req: RunRequest) -> int:
    axis = parse_axis(req.sweep_axis)
    network = load_network(req.network_path)
    hw = load_hardware(req.hardware_path)
    spec = _select_layer(network, req.layer)
    if req.sweep_values:
        values = [float(v) if axis == SweepAxis.F_DAC else int(round(v)) for v in req.sweep_values]
    elif req.sweep_from is not None and req.sweep_to is not None:
        values = sweep_values(axis, req.sweep_from, req.sweep_to, req.sweep_step)
    else:
        raise ConfigError("--sweep", None, "give --from/--to or --values")
    rows = SweepManager(spec, hw, req.mode).sweep(axis, values)
    _emit(sweep_to_csv(rows), req.output_path)
    return EXIT_OK


RUNNERS = {
    Command.REPORT: run_report,
    Command.SIMULATE: run_simulate,
    Command.SWEEP: run_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="python -m src.cli", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--network", default="alexnet",
                       help="network file, or a built-in name (alexnet, receptive-field-demo)")
        p.add_argument("--hardware", help="hardware file; omitted fields keep their defaults")
        p.add_argument("--out", help="output file (default: stdout)")

    report = sub.add_parser(Command.REPORT.value, help="ring counts, area and timing per layer")
    common(report)
    report.add_argument("--mode", default=RingMode.PER_CHANNEL_RINGS.value,
                        help="per-channel-rings or spatial-only-rings")
    report.add_argument("--format", default=OutputFormat.TABLE.value, help="csv, table or structured-text")
    report.add_argument("--workers", type=int, default=1, help="threads evaluating layers")

    simulate = sub.add_parser(Command.SIMULATE.value, help="bit-true optical datapath vs reference convolution")
    common(simulate)
    simulate.add_argument("--layer", help="layer name (default: first layer)")
    simulate.add_argument("--input", help="feature map tensor file (default: random in [-1, 1])")
    simulate.add_argument("--kernels", help="kernel tensor file (default: random in [-1, 1])")
    simulate.add_argument("--bits", type=int, help="DAC/ADC resolution (default: hardware bits)")
    simulate.add_argument("--seed", type=int, default=0, help="seed for random test vectors")

    sweep = sub.add_parser(Command.SWEEP.value, help="vary one parameter on one layer")
    common(sweep)
    sweep.add_argument("--layer", help="layer name (default: first layer)")
    sweep.add_argument("--mode", default=RingMode.PER_CHANNEL_RINGS.value,
                       help="per-channel-rings or spatial-only-rings")
    sweep.add_argument("--sweep", dest="axis", required=True, help="k, n_input_dac, f_dac or bits")
    sweep.add_argument("--from", dest="start", type=float)
    sweep.add_argument("--to", dest="stop", type=float)
    sweep.add_argument("--step", type=float)
    sweep.add_argument("--values", type=float, nargs="+", help="explicit values instead of a range")
    return parser


def request_from_args(args: argparse.Namespace) -> RunRequest:
    command = Command(args.command)
    return RunRequest(
        command=command,
        network_path=args.network,
        hardware_path=args.hardware,
        mode=_parse_choice(RingMode, getattr(args, "mode", RingMode.PER_CHANNEL_RINGS.value), "--mode"),
        output_path=args.out,
        format=_parse_choice(OutputFormat, getattr(args, "format", OutputFormat.TABLE.value), "--format"),
        workers=getattr(args, "workers", 1),
        layer=getattr(args, "layer", None),
        input_path=getattr(args, "input", None),
        kernels_path=getattr(args, "kernels", None),
        bits=getattr(args, "bits", None),
        seed=getattr(args, "seed", 0),
        sweep_axis=getattr(args, "axis", None),
        sweep_from=getattr(args, "start", None),
        sweep_to=getattr(args, "stop", None),
        sweep_step=getattr(args, "step", None),
        sweep_values=getattr(args, "values", None),
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        req = request_from_args(args)
        return RUNNERS[req.command](req)
    except ConfigError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_CONFIG
    except ModelError as e:
        sys.stderr.write(f"error: {args.network}: {e}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
