"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion lines
as they are produced (they are also shown by pytest on any failure).
"""

import sys
import time

import pytest

from flagorbits.cli import main
from flagorbits.flagpoint import make_point
from flagorbits.laurent import LaurentPoly
from flagorbits.orbits import Level, dimension, enumerate_labels
from flagorbits.parsing import parse_label, parse_point, parse_poly
from flagorbits.verify import DEFAULT_SEED, run_all

L = LaurentPoly


def _report(number: int, description: str, ok: bool) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {number} ({description}): {status}", file=sys.stderr)
    assert ok, f"acceptance criterion {number} ({description}) failed"


@pytest.fixture(scope="module")
def full_run():
    """One full default verification run shared by the suite-based criteria."""
    t0 = time.perf_counter()
    reports = run_all(DEFAULT_SEED)
    elapsed = time.perf_counter() - t0
    return {r.check_name: r for r in reports}, elapsed


def test_criterion_1_normal_form_suite(full_run):
    reports, _ = full_run
    r = reports["normal_form"]
    ok = r.passed and r.trials == 1000 and r.elapsed < 10.0
    _report(1, "normal-form suite, 1000 matrices < 10s", ok)


def test_criterion_2_point_orbit_inventories():
    def points(level):
        return {
            str(label)
            for label, is_pt in enumerate_labels(level, -4, 4)
            if is_pt
        }

    fine = {"E_0", "O_0:hyp", "O_-1:hyp", "E_1:hyp,hyp"}
    ok = (
        points(Level.I1) == {"E_0", "O_0:hyp"}
        and points(Level.I2) == {"E_0", "O_0:hyp", "O_-1:hyp"}
        and points(Level.I3) == fine
        and points(Level.I4Rot) == fine
    )
    _report(2, "point-orbit inventories", ok)


def _expected_dimension(label, level):
    """The isomorphism clauses, written per level rather than via the uniform
    tag-counting rule the library uses."""
    family, n, tags = label.family, label.n, label.tags
    cell = (2 * abs(n)) if family == "E" else (2 * n + 1 if n >= 0 else -2 * n - 1)
    if level is Level.I or not tags:
        return (0, cell)
    if len(tags) == 1:
        rank = 1 if tags[0] == "open" else 0
        return (rank, cell - 1)
    first, second = tags
    rank = (first == "open") + (second == "open")
    return (rank, cell - 2)


def test_criterion_3_dimension_table():
    ok = True
    for level in Level:
        for label, _ in enumerate_labels(level, -4, 4):
            if dimension(label, level) != _expected_dimension(label, level):
                ok = False
    _report(3, "dimension table |n| <= 4", ok)


def test_criterion_4_invariance_suite(full_run):
    reports, elapsed = full_run
    invariance = [r for name, r in reports.items() if name.startswith("orbit_invariance")]
    ok = (
        len(invariance) == len(list(Level))
        and all(r.passed for r in invariance)
        and elapsed < 60.0
    )
    _report(4, "invariance suite, full run_all < 60s", ok)


def test_criterion_5_partition_and_refinement(full_run):
    reports, _ = full_run
    _report(5, "partition + refinement", reports["partition_and_refinement"].passed)


def test_criterion_6_involution_suite(full_run):
    reports, _ = full_run
    names = ["involution_I1", "involution_I3", "involution_I4Rot"]
    _report(6, "involution suite", all(reports[n].passed for n in names))


def test_criterion_7_structure_suite(full_run):
    reports, _ = full_run
    _report(7, "structure suite", reports["structure"].passed)


def test_criterion_8_beta_suite(full_run):
    reports, _ = full_run
    _report(8, "beta suite", reports["beta"].passed)


def test_criterion_9_cli_conformance(capsys):
    def run(*argv):
        code = main(list(argv))
        return code, capsys.readouterr().out.rstrip("\n")

    ok = True
    code, out = run("classify", "[2, t^-2+t^-1]", "--level", "I4Rot")
    ok &= code == 0 and out == "E_2:open,open"
    code, out = run("orbit-info", "E_2:open,open", "--level", "I4Rot")
    ok &= (
        code == 0
        and "dimension: (2, 2)" in out
        and "involution: E_2:open,open" in out
    )
    code, out = run("involute", "[0, 0]")
    ok &= code == 0 and out == "[0, 0]'"

    # 500-literal parse/render round trip, split across the three kinds.
    import random

    rng = random.Random(20240)
    for _ in range(200):
        coeffs = {
            rng.randint(-6, 6): rng.randint(-9, 9) for _ in range(rng.randint(0, 5))
        }
        p = L(coeffs)
        ok &= parse_poly(str(p)) == p
    for _ in range(200):
        is_primed = rng.random() < 0.5
        n = rng.randint(-4, 4)
        hi = n if is_primed else n - 1
        coeffs = {
            rng.randint(hi - 5, hi): rng.randint(-9, 9)
            for _ in range(rng.randint(0, 4))
        }
        x = make_point(is_primed, n, L(coeffs))
        ok &= parse_point(str(x)) == x
    count = 0
    for level in Level:
        for label, _ in enumerate_labels(level, -4, 4):
            ok &= parse_label(str(label)) == label
            count += 1
    ok &= count >= 100
    _report(9, "CLI conformance + literal round trips", ok)
