"""The affine slice through the normalized nilpositive element.

Hess is the translate e1 + (lower Borel), where e1 is the multiple of the
nilpositive element normalized against f by the Killing form.  Restriction
of polynomial functions to Hess is polynomial composition with the affine
parametrization; the coordinates used for that parametrization are dual
(under the Killing pairing of the upper and lower Borel) to the gradient
frame z_beta = dq_beta(e1) of an ordered shift family.

In these coordinates the restricted generators are unitriangular: the
restriction of q_beta is s_beta plus a polynomial in the strictly earlier
coordinates, with unit diagonal derivative.  That makes the generator value
map invertible on Hess by one ascending division-free substitution pass,
which is the exact section implemented here.

Orbit slices of Hess are cut out by fixing the values of the underived
invariants; their infinitesimal structure (tangents from the lower
nilradical, trivial isotropy) is checked exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import linalg
from .liealgebra import LieAlgebra, PrincipalTriple, exp_ad_nilpotent
from .invariants import InvariantFamily
from .argshift import ShiftFamily
from .polyring import Poly, gradient
from .rational import R0, R1, rat, to_rat
from .rootdata import RootSystem


class NotTriangular(Exception):
    """The restricted generators failed unitriangularity (upstream bug)."""


def point_in_hess(L: LieAlgebra, triple: PrincipalTriple, v) -> bool:
    diff = linalg.vec_sub([to_rat(c) for c in v], triple.e1)
    return L.supported_in(diff, L.bminus_indices)


def restrict_to_hess(L: LieAlgebra, triple: PrincipalTriple, p: Poly,
                     frame: list | None = None) -> Poly:
    """Restriction of p to Hess as a polynomial in the frame coordinates.

    frame defaults to the Chevalley basis of the lower Borel; a chart
    substitutes its dual frame instead.
    """
    if frame is None:
        frame = [L.basis_vector(i) for i in L.bminus_indices]
    b = len(frame)
    subs = []
    for c in range(L.dim):
        terms = {}
        if triple.e1[c]:
            terms[tuple([0] * b)] = triple.e1[c]
        for g, vec in enumerate(frame):
            if vec[c]:
                e = [0] * b
                e[g] = 1
                terms[tuple(e)] = vec[c]
        subs.append(Poly(b, terms))
    return p.compose(subs)


@dataclass
class HessChart:
    L: LieAlgebra
    triple: PrincipalTriple
    family: ShiftFamily
    zvecs: list            # z_beta = dq_beta(e1), a basis of the upper Borel
    frame: list            # dual frame in the lower Borel: (z_beta, frame_gamma) = delta
    restricted: list       # restrictions of the generators, in frame coordinates
    ms: tuple              # degrees m(beta)

    @property
    def b(self) -> int:
        return len(self.zvecs)

    def s_coordinates(self, v) -> list:
        """Chart coordinates of a point of Hess: s_beta = (z_beta, v - e1)."""
        diff = linalg.vec_sub([to_rat(c) for c in v], self.triple.e1)
        return [self.L.killing_pair(z, diff) for z in self.zvecs]

    def point_from_s(self, svals) -> list:
        v = list(self.triple.e1)
        for s, vec in zip(svals, self.frame):
            if s:
                v = linalg.vec_add(v, linalg.vec_scale(vec, s))
        return v


def build_chart(F: ShiftFamily) -> HessChart:
    """Gradient frame at e1, its dual coordinates, restricted generators.

    Verifies exactly that the frame is a basis of the upper Borel supported
    layer by layer, and that the restricted generators are unitriangular;
    a violation raises NotTriangular.
    """
    L = F.L
    triple = F.triple
    e1 = triple.e1
    zvecs = [gradient(F.ctx, e.poly, e1) for e in F.entries]
    for e, z in zip(F.entries, zvecs):
        if not L.supported_in(z, L.layer_indices(e.m - 1)):
            raise NotTriangular(
                f"frame vector for position {e.beta} is not in layer {e.m - 1}")
    if linalg.rank(zvecs) != F.b:
        raise NotTriangular("gradient frame at e1 is not a basis of the upper Borel")
    bminus = [L.basis_vector(i) for i in L.bminus_indices]
    pairing = [[L.killing_pair(z, wv) for wv in bminus] for z in zvecs]
    pinv = linalg.inverse(pairing)
    frame = []
    for g in range(F.b):
        vec = L.zero()
        for mu in range(F.b):
            if pinv[mu][g]:
                vec = linalg.vec_add(vec, linalg.vec_scale(bminus[mu], pinv[mu][g]))
        frame.append(vec)
    restricted = [restrict_to_hess(L, triple, e.poly, frame) for e in F.entries]
    for bi, rp in enumerate(restricted):
        for gi in range(F.b):
            d = rp.partial(gi)
            if gi == bi:
                if d != Poly.const(F.b, 1):
                    raise NotTriangular(
                        f"diagonal derivative of restricted generator {bi + 1} is not 1")
            elif gi > bi:
                if not d.is_zero():
                    raise NotTriangular(
                        f"restricted generator {bi + 1} depends on later coordinate {gi + 1}")
    return HessChart(L=L, triple=triple, family=F, zvecs=zvecs, frame=frame,
                     restricted=restricted, ms=tuple(e.m for e in F.entries))


def hess_section(chart: HessChart, cvals) -> list:
    """The point of Hess whose generator values are cvals, solved ascending.

    Each step is linear in the next coordinate with unit coefficient, so the
    solve is division free and exact for every input tuple.
    """
    cvals = [to_rat(c) for c in cvals]
    if len(cvals) != chart.b:
        raise ValueError(f"expected {chart.b} values, got {len(cvals)}")
    svals = [R0] * chart.b
    for bi in range(chart.b):
        probe = list(svals)
        probe[bi] = R0
        rest = chart.restricted[bi].evaluate(probe)
        svals[bi] = cvals[bi] - rest
    return chart.point_from_s(svals)


# -- orbit slices ------------------------------------------------------------


@dataclass
class OrbitSlice:
    base_point: list
    values: tuple      # the invariant values that cut out the slice


def orbit_slice(inv: InvariantFamily, v0) -> OrbitSlice:
    v0 = [to_rat(c) for c in v0]
    return OrbitSlice(base_point=v0, values=tuple(p.evaluate(v0) for p in inv.polys))


def slice_membership(s: OrbitSlice, inv: InvariantFamily, v) -> bool:
    v = [to_rat(c) for c in v]
    return tuple(p.evaluate(v) for p in inv.polys) == s.values


def slice_tangent_rows(L: LieAlgebra, v) -> list:
    """Brackets of the lower-nilradical basis with v (tangents to the slice)."""
    return [L.bracket(L.basis_vector(i), v) for i in L.nminus_indices]


def slice_tangent_dim(L: LieAlgebra, v) -> int:
    return linalg.rank(slice_tangent_rows(L, v))


def slice_isotropy_dim(L: LieAlgebra, v) -> int:
    """Dimension of the centralizer of v inside the lower nilradical."""
    return L.n - slice_tangent_dim(L, v)


def slice_sample(L: LieAlgebra, v0, count: int, rng: random.Random,
                 coeff_bound: int = 3) -> list:
    """Points exp(ad z) v0 for random z in the lower nilradical (exact)."""
    out = []
    for _ in range(count):
        z = L.zero()
        for i in L.nminus_indices:
            z[i] = rat(rng.randint(-coeff_bound, coeff_bound), rng.randint(1, 2))
        out.append(exp_ad_nilpotent(L, z, v0))
    return out


# -- graded series -----------------------------------------------------------


def _series_mul(a: list, b: list, order: int) -> list:
    out = [R0] * (order + 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if i + j > order:
                break
            if bj:
                out[i + j] = out[i + j] + ai * bj
    return out


def _geometric(k: int, order: int) -> list:
    return [R1 if i % k == 0 else R0 for i in range(order + 1)]


def poincare_series(rs: RootSystem, order: int) -> list:
    """Graded dimension series of the generator algebra, to the given order.

    Computed in two ways: over the invariant degrees (for each j the factors
    1/(1-t^i), i = 1..d_j) and over the layer dimensions (factors
    1/(1-t^m)^{r_m}).  Raises if the truncations disagree.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    f1 = [R1] + [R0] * order
    for d in rs.degrees:
        for i in range(1, d + 1):
            f1 = _series_mul(f1, _geometric(i, order), order)
    f2 = [R1] + [R0] * order
    for m, r in enumerate(rs.layer_dims, start=1):
        for _ in range(r):
            f2 = _series_mul(f2, _geometric(m, order), order)
    if f1 != f2:
        raise ValueError("the two series factorizations disagree")
    return f1
