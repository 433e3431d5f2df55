"""Report serialisation.

CSV is the machine-readable (and plotting) interface: fixed column order,
integers as integers, reals as %.6e, times in raw seconds. The table is for
people and scales times to ns/µs/ms.
"""
import csv
import io
import json
from typing import Any, Callable, List, Sequence, Tuple

from src.accelerator.architecture import architecture_to_dict, build_architecture
from src.accelerator.config_loader import hardware_to_document
from src.custom_types.enums import OutputFormat
from src.reporting.report_builder import LayerRow, NetworkReport
from src.utils.formatting import format_count, format_ratio, format_time

BASE_COLUMNS: List[Tuple[str, Callable[[LayerRow], Any]]] = [
    ("layer", lambda r: r.spec.name),
    ("n", lambda r: r.spec.n),
    ("m", lambda r: r.spec.m),
    ("p", lambda r: r.spec.p),
    ("s", lambda r: r.spec.s),
    ("n_c", lambda r: r.spec.n_c),
    ("k", lambda r: r.spec.k),
    ("n_input", lambda r: r.dims.n_input),
    ("n_kernel", lambda r: r.dims.n_kernel),
    ("o", lambda r: r.dims.o),
    ("n_locs", lambda r: r.dims.n_locs),
    ("ring_mode", lambda r: r.resources.ring_mode.value),
    ("rings_unfiltered", lambda r: r.resources.rings_unfiltered),
    ("rings_filtered", lambda r: r.resources.rings_filtered),
    ("rings_per_channel", lambda r: r.per_channel.rings_filtered),
    ("rings_spatial_only", lambda r: r.spatial_only.rings_filtered),
    ("savings_ratio", lambda r: r.resources.savings_ratio),
    ("ring_area_mm2", lambda r: r.resources.ring_area_mm2),
    ("t_optical_s", lambda r: r.timing.t_optical),
    ("t_full_s", lambda r: r.timing.t_full),
    ("t_full_serial_s", lambda r: r.timing.t_full_serial),
    ("t_weight_load_s", lambda r: r.timing.t_weight_load),
    ("t_layer_s", lambda r: r.timing.t_layer),
    ("bottleneck", lambda r: r.timing.bottleneck.value),
    ("dac_conversions_steady", lambda r: r.timing.dac_conversions_steady),
]


def _speedup_columns(report: NetworkReport) -> List[Tuple[str, Callable[[LayerRow], Any]]]:
    columns = []
    for baseline in report.baselines.baselines:
        for kind in ("full", "optical"):
            def getter(row, baseline=baseline, kind=kind):
                speedup = row.timing.speedups.get(baseline)
                return getattr(speedup, kind) if speedup else None
            columns.append((f"speedup_{baseline}_{kind}", getter))
    return columns


def csv_columns(report: NetworkReport) -> List[Tuple[str, Callable[[LayerRow], Any]]]:
    return BASE_COLUMNS + _speedup_columns(report)


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.6e}"
    return str(value)


def to_csv(report: NetworkReport) -> str:
    columns = csv_columns(report)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([name for name, _ in columns])
    for row in report.rows:
        writer.writerow([_csv_cell(getter(row)) for _, getter in columns])
    return buffer.getvalue()


def _layer_document(row: LayerRow) -> dict:
    timing = row.timing
    return {
        "layer": row.spec.as_dict(),
        "dims": {"n_input": row.dims.n_input, "n_kernel": row.dims.n_kernel, "o": row.dims.o,
                 "n_output": row.dims.n_output, "n_locs": row.dims.n_locs,
                 "stride_exact": row.dims.stride_exact},
        "dataflow": {"total_input_loads": row.schedule.total_input_loads,
                     "reuse_factor": row.schedule.reuse_factor},
        "rings": {
            "mode": row.resources.ring_mode.value,
            "unfiltered": row.resources.rings_unfiltered,
            "filtered": row.resources.rings_filtered,
            "per_channel": row.per_channel.rings_filtered,
            "spatial_only": row.spatial_only.rings_filtered,
            "savings_ratio": row.resources.savings_ratio,
            "ring_area_mm2": row.resources.ring_area_mm2,
            "total_area_mm2": row.resources.total_area_mm2,
        },
        "timing": {
            "t_optical": timing.t_optical,
            "t_full": timing.t_full,
            "t_full_serial": timing.t_full_serial,
            "t_weight_load": timing.t_weight_load,
            "t_layer": timing.t_layer,
            "t_dac_steady": timing.t_dac_steady,
            "t_dac_rowstart": timing.t_dac_rowstart,
            "t_adc": timing.t_adc,
            "bottleneck": timing.bottleneck.value,
            "dac_conversions_steady": timing.dac_conversions_steady,
            "dac_conversions_rowstart": timing.dac_conversions_rowstart,
            "sram_fits": timing.sram_fits,
            "dram_transfers": "excluded" if timing.dram_excluded else "included",
        },
        "speedups": {name: {"full": s.full, "optical": s.optical, "layer": s.layer}
                     for name, s in timing.speedups.items()},
    }


def to_structured(report: NetworkReport) -> str:
    document = {
        "network": report.network.name,
        "ring_mode": report.ring_mode.value,
        "hardware": hardware_to_document(report.hardware),
        "layers": [_layer_document(row) for row in report.rows],
        "provisioned_rings": {"layer": report.provisioned_layer,
                              "rings": report.provisioned.rings_filtered,
                              "ring_area_mm2": report.provisioned.ring_area_mm2,
                              "total_area_mm2": report.provisioned.total_area_mm2},
        "totals": report.totals,
        "baselines": {"source": report.baselines.source,
                      "layers": list(report.baselines.layer_names),
                      "latencies_ms": {k: list(v) for k, v in report.baselines.latencies_ms.items()}},
        "architecture": architecture_to_dict(build_architecture(report.hardware)),
    }
    return json.dumps(document, indent=2) + "\n"


def _render_table(header: Sequence[str], body: Sequence[Sequence[str]]) -> List[str]:
    widths = [max(len(cell) for cell in column) for column in zip(header, *body)]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(header, widths)),
             "  ".join("-" * width for width in widths)]
    lines += ["  ".join(cell.rjust(width) for cell, width in zip(line, widths)) for line in body]
    return lines


def to_table(report: NetworkReport) -> str:
    header = ["layer", "n_locs", "rings(unfilt)", "rings(filt)", "savings", "area mm2",
              "t_optical", "t_full", "t_serial", "t_weights", "bottleneck"]
    baselines = report.baselines.baselines if report.speedups_included else ()
    for baseline in baselines:
        header += [f"{baseline}/full", f"{baseline}/optical"]

    body = []
    for row in report.rows:
        t = row.timing
        line = [row.spec.name, format_count(row.dims.n_locs), format_count(row.resources.rings_unfiltered),
                format_count(row.resources.rings_filtered), format_ratio(row.resources.savings_ratio),
                f"{row.resources.ring_area_mm2:.4g}", format_time(t.t_optical), format_time(t.t_full),
                format_time(t.t_full_serial), format_time(t.t_weight_load), t.bottleneck.value]
        for baseline in baselines:
            line += [format_ratio(t.speedups[baseline].full), format_ratio(t.speedups[baseline].optical)]
        body.append(line)

    totals = report.totals
    lines = [f"network: {report.network.name}   ring mode: {report.ring_mode.value}   "
             f"ADC mode: {report.hardware.adc_mode_label}", ""]
    lines += _render_table(header, body)
    lines += [
        "",
        f"provisioned ring bank: {format_count(report.provisioned.rings_filtered)} rings "
        f"({report.provisioned_layer}), {report.provisioned.ring_area_mm2:.4g} mm2 of rings, "
        f"{report.provisioned.total_area_mm2:.4g} mm2 with DACs and SRAM",
        f"network totals: optical {format_time(totals['t_optical'])}, full system {format_time(totals['t_full'])}, "
        f"with weight loads {format_time(totals['t_layer'])}",
        "DRAM transfers: excluded",
    ]
    if baselines:
        for baseline in baselines:
            latencies = ", ".join(f"{ms:g} ms" for ms in report.baselines.latencies_ms[baseline])
            lines.append(f"baseline {baseline}: {latencies} (source: {report.baselines.source})")
    return "\n".join(lines) + "\n"


WRITERS = {
    OutputFormat.CSV: to_csv,
    OutputFormat.TABLE: to_table,
    OutputFormat.STRUCTURED_TEXT: to_structured,
}


def render(report: NetworkReport, output_format: OutputFormat) -> str:
    return WRITERS[output_format](report)


SWEEP_COLUMNS = ("axis", "value", "rings_filtered", "t_optical_s", "t_full_s", "quant_error_bound")


def sweep_to_csv(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SWEEP_COLUMNS)
    for row in rows:
        writer.writerow([row.axis.value, _csv_cell(row.value), row.rings_filtered, _csv_cell(row.t_optical),
                         _csv_cell(row.t_full), _csv_cell(row.quant_error_bound)])
    return buffer.getvalue()
