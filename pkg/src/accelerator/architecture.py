from typing import Dict, List

import networkx as nx

from src.custom_types.enums import Stage
from src.custom_types.hardware_types import HardwareConfig

FAST = "fast"
SLOW = "slow"

SOURCE = "dram_in"
SINK = "dram_out"


class ArchitectureBuilder:
    """Builds the full-system datapath as a DiGraph.

    Buffers separate the slow interface clock from the fast optical clock. Nodes
    that bound the per-location rate carry a `stage` attribute.
    """

    def __init__(self, hw: HardwareConfig):
        self.hw = hw
        self.graph = nx.DiGraph()

    def _add(self, node_id: str, label: str, clock_domain: str, stage: Stage = None, **attrs):
        self.graph.add_node(node_id, label=label, clock_domain=clock_domain,
                            stage=stage.value if stage else None, **attrs)

    def build(self) -> nx.DiGraph:
        hw = self.hw
        self._add(SOURCE, "Off-chip DRAM (read)", SLOW)
        self._add("input_buffer", "Input Buffer", SLOW)
        self._add("sram_cache", "SRAM cache", FAST, capacity=hw.sram_value_capacity,
                  access_time=hw.t_sram_access, area_mm2=hw.sram_area_mm2)
        self._add("input_dac", "Input DACs", FAST, Stage.DAC, count=hw.n_input_dac, rate=hw.f_dac)
        self._add("laser_diodes", "Laser diodes (WDM)", FAST)
        self._add("modulator", "MZM modulators", FAST)
        self._add("mrr_bank", "MRR weight banks", FAST, Stage.OPTICAL, rate=hw.f_clock)
        self._add("photodiode", "Photodiodes", FAST)
        self._add("adc", "ADC", FAST, Stage.ADC, count=hw.adc_mode_label, rate=hw.f_adc)
        self._add("output_buffer", "Output Buffer", SLOW)
        self._add(SINK, "Off-chip DRAM (write)", SLOW)
        self._add("weight_buffer", "Kernel Weights Buffer", SLOW, weight_path=True)
        self._add("weight_dac", "Kernel weight DAC", FAST, count=hw.n_weight_dac, rate=hw.f_dac,
                  weight_path=True)

        self.graph.add_edges_from([
            (SOURCE, "input_buffer"), ("input_buffer", "sram_cache"), ("sram_cache", "input_dac"),
            ("input_dac", "modulator"), ("laser_diodes", "modulator"), ("modulator", "mrr_bank"),
            ("mrr_bank", "photodiode"), ("photodiode", "adc"), ("adc", "output_buffer"),
            ("output_buffer", SINK),
            (SOURCE, "weight_buffer"), ("weight_buffer", "weight_dac"), ("weight_dac", "mrr_bank"),
        ])
        return self.graph


def build_architecture(hw: HardwareConfig) -> nx.DiGraph:
    return ArchitectureBuilder(hw).build()


def datapath_stages(graph: nx.DiGraph) -> List[Stage]:
    """Pipeline stages met by an input value on its way from DRAM back to DRAM, in order"""
    input_side = nx.subgraph_view(graph, filter_node=lambda node: not graph.nodes[node].get("weight_path"))
    path = nx.shortest_path(input_side, SOURCE, SINK)
    return [Stage(graph.nodes[node]["stage"]) for node in path if graph.nodes[node]["stage"]]


def architecture_to_dict(graph: nx.DiGraph) -> Dict:
    """Convert the architecture graph to plain node and edge lists"""
    nodes = []
    for node_id in sorted(graph.nodes):
        data = graph.nodes[node_id]
        data_dict = {k: v for k, v in data.items() if v is not None}
        data_dict["_id"] = node_id
        data_dict["_isLeaf"] = graph.out_degree(node_id) == 0
        nodes.append(data_dict)

    edges = [{"source": u, "target": v} for u, v in sorted(graph.edges())]

    return {
        "nodes": nodes,
        "edges": edges
    }
