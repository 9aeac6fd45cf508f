"""Acceptance suite: one exact check per criterion across the default types.

Every criterion is verified with tolerance zero (exact rational arithmetic).
Run with `pytest tests/test_acceptance.py -v -s` to see one line per criterion.
"""

import pytest

from mfhess.verifier import SuiteConfig, run_suite

TYPES = ["A1", "A2", "A1xA1", "B2", "A3"]

CRITERIA = {
    1: "degree sum and dual-partition identities",
    2: "antisymmetry, Jacobi and trace-form invariance on all basis triples",
    3: "principal module dimensions 2m+1 and triangular chains spanning the lower Borel",
    4: "invariant gradient rank l exactly at regular points, deficient at singular ones",
    5: "gradients along the shifted line span the lower Borel at Coxeter-many points",
    6: "all pairwise Poisson brackets of the b generators vanish identically",
    7: "full gradient span at the nilpositive element and exact chain relations",
    8: "shift along the principal nilpotent spans the lower Borel at w",
    9: "family dimension b with graded dimensions equal to the layer dimensions",
    10: "unitriangular restricted generators and exact two-way section round trips",
    11: "both graded series product forms agree coefficientwise to order 2h",
    12: "sampled slice points are strongly regular",
    13: "Hamiltonian frames are n-dimensional and isotropic at those points",
    14: "slice tangent spaces are n-dimensional and isotropic",
    15: "frame and slice tangents decompose the orbit with nonsingular pairing",
    16: "trivial slice isotropy and invariance of values along the exponential orbit",
    17: "byte-identical reports from identical configurations",
}


@pytest.fixture(scope="session")
def reports():
    out = {}
    for label in TYPES:
        out[label] = run_suite(SuiteConfig(algebra=label, seed=2024,
                                           determinism_trials=2))
    return out


@pytest.mark.parametrize("criterion", sorted(CRITERIA))
def test_criterion(reports, criterion):
    statuses = {}
    for label in TYPES:
        recs = [c for c in reports[label].checks if c.criterion == criterion]
        assert len(recs) == 1, f"criterion {criterion} must appear exactly once"
        statuses[label] = recs[0].status
    ok = all(s == "pass" for s in statuses.values())
    verdict = "PASS" if ok else "FAIL"
    print(f"criterion {criterion:2d} {verdict} "
          f"[{', '.join(f'{t}:{s}' for t, s in statuses.items())}] "
          f"- {CRITERIA[criterion]}")
    assert ok, f"criterion {criterion}: {statuses}"


def test_no_failures_anywhere(reports):
    for label, rep in reports.items():
        assert not rep.failed, f"{label} has failing checks"
        counts = rep.counts
        assert counts["inconclusive"] == 0, f"{label} has inconclusive checks"


def test_every_criterion_enumerated_once(reports):
    for label, rep in reports.items():
        crits = sorted(c.criterion for c in rep.checks if c.criterion)
        assert crits == list(range(1, 18)), label


def test_reports_reproducible_across_calls():
    cfg_a = SuiteConfig(algebra="A2", seed=2024, determinism_trials=2)
    cfg_b = SuiteConfig(algebra="A2", seed=2024, determinism_trials=2)
    assert run_suite(cfg_a).to_json() == run_suite(cfg_b).to_json()
