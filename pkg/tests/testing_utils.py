from pathlib import Path

import numpy as np

from hypothesis            import assume
from hypothesis.strategies import composite
from hypothesis.strategies import integers

from src.custom_types.layer_types  import ConvLayerSpec
from src.custom_types.tensor_types import Tensor3
from src.custom_types.tensor_types import Tensor4

GOLDEN_DIR = Path(__file__).parent / "golden"


@composite
def conv_layers(draw, max_n=32, max_m=7, max_c=8, max_k=8, max_s=4):
    """Valid ConvLayerSpecs; the kernel always fits inside the padded input"""
    n   = draw(integers(min_value=1, max_value=max_n))
    p   = draw(integers(min_value=0, max_value=3))
    m   = draw(integers(min_value=1, max_value=min(max_m, n + 2 * p)))
    s   = draw(integers(min_value=1, max_value=max_s))
    n_c = draw(integers(min_value=1, max_value=max_c))
    k   = draw(integers(min_value=1, max_value=max_k))
    assume(m <= n + 2 * p)
    return ConvLayerSpec("layer", n=n, m=m, p=p, s=s, n_c=n_c, k=k)


def random_tensors(spec, seed, low=-1.0, high=1.0):
    """Feature map and kernel set with the layer's extents, uniform in [low, high]"""
    rng = np.random.default_rng(seed)
    fm      = Tensor3(rng.uniform(low, high, (spec.n, spec.n, spec.n_c)))
    kernels = Tensor4(rng.uniform(low, high, (spec.k, spec.m, spec.m, spec.n_c)))
    return fm, kernels


def max_abs_deviation(a, b):
    return float(np.max(np.abs(np.asarray(a.values) - np.asarray(b.values))))
