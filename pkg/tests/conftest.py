import pytest

from mfhess.rootdata import CartanMatrix, build_root_system, cartan_matrix_for_label
from mfhess.liealgebra import chevalley_algebra, principal_triple, principal_decomposition
from mfhess.polyring import GradientContext
from mfhess.invariants import invariant_generators
from mfhess.argshift import choose_regular_y, shift_family
from mfhess.hessenberg import build_chart

SEED = 42

_BUNDLES = {}


class Bundle:
    def __init__(self, label):
        self.label = label
        self.rs = build_root_system(CartanMatrix.from_rows(cartan_matrix_for_label(label)))
        self.L = chevalley_algebra(self.rs)
        self.ctx = GradientContext(self.L)
        self.triple = principal_triple(self.L)
        self.decomp = principal_decomposition(self.L, self.triple)
        self.inv = invariant_generators(self.L, self.rs, self.ctx)
        self.y = choose_regular_y(self.L, self.rs, SEED)
        self.family = shift_family(self.L, self.inv, self.y, self.ctx, self.triple)
        self.chart = build_chart(self.family)


def get_bundle(label):
    if label not in _BUNDLES:
        _BUNDLES[label] = Bundle(label)
    return _BUNDLES[label]


@pytest.fixture(scope="session")
def bundles():
    return get_bundle
