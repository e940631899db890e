"""Randomized property checks replaying the orbit-decomposition statements.

Every check is deterministic given its master seed: per-trial seeds are
derived by hashing ``(master_seed, check_name, trial index)``, so trials are
independent and reproducible in isolation.  A report serializes to JSON as
``{check_name, trials, failures[], master_seed}``.
"""

from __future__ import annotations

import hashlib
import random
import time
from dataclasses import dataclass, field
from typing import Optional

from gmpy2 import mpq

from .flagpoint import (
    FlagPoint,
    act,
    involute,
    normal_form,
    primed,
    representative,
    rotate_point,
    straight,
)
from .laurent import LaurentPoly
from .loopgroup import (
    NONZERO_COEFFS,
    GroupElement,
    SubgroupId,
    diag_t,
    dot_s1,
    inverse,
    lower,
    membership,
    multiply,
    sample_subgroup,
    torus,
    upper,
)
from .orbits import (
    Level,
    OrbitLabel,
    classify,
    classify_fine_i4,
    distinguished_point,
    enumerate_labels,
    involution_label,
    label_is_valid,
    reduce_to_base,
    sample_point,
)

DEFAULT_SEED = 42
DEFAULT_PREC = 32
MAX_RECORDED_FAILURES = 25


@dataclass
class CheckReport:
    check_name: str
    trials: int
    failures: list[dict] = field(default_factory=list)
    master_seed: int = 0
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        # The elapsed time is intentionally omitted: reports with the same
        # master seed are byte-identical.
        return {
            "check_name": self.check_name,
            "trials": self.trials,
            "failures": self.failures,
            "master_seed": self.master_seed,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else f"FAIL ({len(self.failures)} failures)"
        return f"{self.check_name}: {status} [{self.trials} trials, {self.elapsed:.2f}s]"


def derive_seed(master_seed: int, *parts) -> int:
    """Splittable per-trial seed: hash of the master seed and a trial path."""
    text = ":".join([str(master_seed), *map(str, parts)])
    return int.from_bytes(hashlib.blake2b(text.encode(), digest_size=8).digest(), "big")


class _Collector:
    def __init__(self, name: str, master_seed: int):
        self.report = CheckReport(name, 0, [], master_seed)
        self._t0 = time.perf_counter()

    def trial(self) -> None:
        self.report.trials += 1

    def fail(self, **record) -> None:
        # Cap the recorded detail; the pass/fail verdict still sees every trial.
        if len(self.report.failures) < MAX_RECORDED_FAILURES:
            self.report.failures.append(
                {k: str(v) for k, v in record.items()}
            )

    def check(self, ok: bool, **record) -> None:
        if not ok:
            self.fail(**record)

    def done(self) -> CheckReport:
        self.report.elapsed = time.perf_counter() - self._t0
        return self.report


# -- random inputs ----------------------------------------------------------


def _rand_poly(rng: random.Random, lo: int, hi: int, max_terms: int = 3) -> LaurentPoly:
    coeffs = {}
    for _ in range(rng.randint(0, max_terms)):
        coeffs[rng.randint(lo, hi)] = rng.choice(NONZERO_COEFFS)
    return LaurentPoly(coeffs)


def random_unimodular(seed: int, max_word: int = 6, prec: int = DEFAULT_PREC) -> GroupElement:
    """Product of ``<= max_word`` special generators, truncated to ``prec``."""
    rng = random.Random(seed)
    g = None
    for _ in range(rng.randint(1, max_word)):
        kind = rng.randrange(5)
        if kind == 0:
            factor = upper(_rand_poly(rng, 0, 4))
        elif kind == 1:
            factor = lower(_rand_poly(rng, 1, 4))
        elif kind == 2:
            factor = diag_t(rng.randint(-2, 2))
        elif kind == 3:
            factor = torus(rng.choice(NONZERO_COEFFS))
        else:
            factor = dot_s1()
        g = factor if g is None else multiply(g, factor)
    return GroupElement(g.a, g.b, g.c, g.d, prec)


def random_point(seed: int, n_bound: int = 6) -> FlagPoint:
    """Random valid normal form with ``|n| <= n_bound``."""
    rng = random.Random(seed)
    is_primed = rng.random() < 0.5
    n = rng.randint(-n_bound, n_bound)
    hi = n if is_primed else n - 1
    p = _rand_poly(rng, hi - 2 * n_bound, hi, max_terms=4)
    if is_primed:
        return primed(n, p)
    return straight(n, p)


def _labels_in_range(level: Level, n_min: int, n_max: int) -> list[OrbitLabel]:
    return [label for label, _ in enumerate_labels(level, n_min, n_max)]


# -- checks -----------------------------------------------------------------


def check_normal_form(trials: int = 1000, seed: int = DEFAULT_SEED) -> CheckReport:
    """Coset-oracle soundness, right-I invariance and idempotence."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    col = _Collector("normal_form", seed)
    for i in range(trials):
        col.trial()
        s = derive_seed(seed, "normal_form", i)
        g = random_unimodular(s)
        x = normal_form(g)
        h = multiply(inverse(representative(x)), g)
        col.check(
            membership(h, SubgroupId.I),
            property="soundness", input=g, expected="h in I", actual=h,
        )
        k = sample_subgroup(SubgroupId.I, seed=derive_seed(s, "right"))
        y = normal_form(multiply(g, k))
        col.check(
            y == x,
            property="right_invariance", input=f"{g} * {k}", expected=x, actual=y,
        )
        z = random_point(derive_seed(s, "idem"))
        w = normal_form(representative(z))
        col.check(
            w == z, property="idempotence", input=z, expected=z, actual=w,
        )
    return col.done()


def check_orbit_invariance(
    level: Level,
    n_range: tuple[int, int] = (-3, 3),
    trials: int = 100,
    seed: int = DEFAULT_SEED,
    elements: int = 20,
) -> CheckReport:
    """Labels are constant along subgroup orbits (and rotations at I4Rot)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    col = _Collector(f"orbit_invariance_{level}", seed)
    subgroup = level.subgroup
    for label in _labels_in_range(level, *n_range):
        gs = [
            sample_subgroup(subgroup, seed=derive_seed(seed, level, label, "g", j))
            for j in range(elements)
        ]
        for i in range(trials):
            col.trial()
            x = sample_point(label, level, derive_seed(seed, level, label, "x", i))
            for g in gs:
                got = classify(act(g, x), level)
                col.check(
                    got == label,
                    property="invariance", label=label, point=x, element=g,
                    expected=label, actual=got,
                )
            if level is Level.I4Rot:
                rng = random.Random(derive_seed(seed, level, label, "rot", i))
                for _ in range(5):
                    gamma = rng.choice(NONZERO_COEFFS)
                    got = classify(rotate_point(gamma, x), level)
                    col.check(
                        got == label,
                        property="rotation_invariance", label=label, point=x,
                        gamma=gamma, expected=label, actual=got,
                    )
    return col.done()


def check_partition_and_refinement(
    n_range: tuple[int, int] = (-3, 3),
    trials: int = 200,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Each point gets exactly one valid label per level, finer refining coarser."""
    col = _Collector("partition_and_refinement", seed)
    levels = list(Level)
    for family in ("E", "O"):
        for n in range(n_range[0], n_range[1] + 1):
            base = OrbitLabel(family, n)
            for i in range(trials):
                col.trial()
                x = sample_point(
                    base, Level.I, derive_seed(seed, "partition", family, n, i)
                )
                chain = [classify(x, level) for level in levels]
                col.check(
                    chain[0] == base,
                    property="base_cell", point=x, expected=base, actual=chain[0],
                )
                for level, lab in zip(levels, chain):
                    col.check(
                        label_is_valid(lab, level),
                        property="valid_label", point=x, level=level, actual=lab,
                    )
                for coarse, fine in zip(chain, chain[1:]):
                    ok = (
                        coarse.family == fine.family
                        and coarse.n == fine.n
                        and coarse.tags == fine.tags[: len(coarse.tags)]
                    )
                    col.check(
                        ok,
                        property="refinement", point=x, expected=coarse, actual=fine,
                    )
    return col.done()


def check_involution(
    level: Level, trials: int = 500, seed: int = DEFAULT_SEED
) -> CheckReport:
    """Closed-form involution versus translation, and the label tables."""
    col = _Collector(f"involution_{level}", seed)
    s1 = dot_s1()
    for label in _labels_in_range(level, -4, 4):
        col.trial()
        image = involution_label(label, level)
        col.check(
            label_is_valid(image, level),
            property="table_valid", label=label, actual=image,
        )
        back = involution_label(image, level)
        col.check(
            back == label,
            property="table_order_two", label=label, expected=label, actual=back,
        )
    labels = _labels_in_range(level, -3, 3)
    for i in range(trials):
        col.trial()
        rng = random.Random(derive_seed(seed, level, "inv", i))
        label = rng.choice(labels)
        x = sample_point(label, level, derive_seed(seed, level, "invpt", i))
        y = involute(x)
        col.check(
            involute(y) == x,
            property="order_two", point=x, expected=x, actual=involute(y),
        )
        translated = act(s1, x)
        col.check(
            y == translated,
            property="closed_form_vs_translation", point=x,
            expected=translated, actual=y,
        )
        got = classify(y, level)
        want = involution_label(label, level)
        col.check(
            got == want,
            property="label_consistency", point=x, expected=want, actual=got,
        )
    return col.done()


def check_structure(
    n_range: tuple[int, int] = (-3, 3),
    trials: int = 200,
    seed: int = DEFAULT_SEED,
) -> CheckReport:
    """Free transitive coordinates, stabilizers, strata, base-point reduction."""
    col = _Collector("structure", seed)
    lo, hi = n_range
    t = LaurentPoly.t_power

    # Freeness round-trip on the positive cells: the coordinates of
    # upper(p).[n,0] recover p exactly, so distinct p give distinct points.
    for n in range(1, hi + 1):
        for base, deg_bound in ((straight(n), 2 * n - 1), (primed(n), 2 * n)):
            seen_p, seen_x = set(), set()
            for i in range(trials):
                col.trial()
                rng = random.Random(derive_seed(seed, "free", n, base.primed, i))
                p = _rand_poly(rng, 0, deg_bound, max_terms=deg_bound + 1)
                x = act(upper(p), base)
                expected = make_shifted(base, p)
                col.check(
                    x == expected,
                    property="free_transitive", input=p, expected=expected, actual=x,
                )
                coord = -x.p if base.primed else x.p
                col.check(
                    coord == p.shift(-n),
                    property="coordinate_roundtrip", input=p,
                    expected=p.shift(-n), actual=coord,
                )
                seen_p.add(p)
                seen_x.add(x)
            col.check(
                len(seen_p) == len(seen_x),
                property="injectivity", input=f"n={n} primed={base.primed}",
                expected=len(seen_p), actual=len(seen_x),
            )

    # Stratum bijection on the negative cells: lower(t*p).[n,0] with
    # valuation(p) = k lands in the stratum indexed by k.
    for n in range(lo, 0):
        for base, deg_bound in ((straight(n), -2 * n - 1), (primed(n), -2 * n - 2)):
            if deg_bound < 0:
                continue
            for i in range(trials // 4):
                col.trial()
                rng = random.Random(derive_seed(seed, "strata", n, base.primed, i))
                p = _rand_poly(rng, 0, deg_bound, max_terms=3)
                if p.is_zero():
                    continue
                k = p.valuation()
                x = act(lower(p.shift(1)), base)
                ok = (
                    x.primed != base.primed
                    and x.n == -n - 1 - k
                    and not x.p.is_zero()
                    and x.p.valuation() == n
                )
                col.check(
                    ok,
                    property="stratum_bijection", input=f"n={n} p={p}",
                    expected=f"stratum k={k}", actual=x,
                )

    # Stabilizer conditions.  In the paper's (a, b; tc, d) coordinates the
    # fixing thresholds are val(b) >= 2n / val(c) >= -2n; on the stored
    # lower-left entry t*c the latter reads val >= -2n+1.
    for i in range(trials // 4):
        rng = random.Random(derive_seed(seed, "stab", i))
        for n in range(1, hi + 1):
            for base, b_min in ((straight(n), 2 * n), (primed(n), 2 * n + 1)):
                col.trial()
                g = _stabilizer_upper(rng, b_min)
                y = act(g, base)
                col.check(
                    y == base,
                    property="stabilizer_b", input=f"{g} on {base}",
                    expected=base, actual=y,
                )
        for n in range(lo, 0):
            for base, c_min in ((straight(n), -2 * n + 1), (primed(n), -2 * n)):
                col.trial()
                g = _stabilizer_lower(rng, c_min)
                y = act(g, base)
                col.check(
                    y == base,
                    property="stabilizer_c", input=f"{g} on {base}",
                    expected=base, actual=y,
                )

    # Base-point reduction is sound.
    for i in range(trials):
        col.trial()
        x = random_point(derive_seed(seed, "reduce", i), n_bound=3)
        h, base = reduce_to_base(x)
        col.check(
            membership(h, SubgroupId.I),
            property="reduce_membership", point=x, expected="h in I", actual=h,
        )
        y = act(h, x)
        col.check(
            y == base, property="reduce_to_base", point=x, expected=base, actual=y,
        )
        col.check(
            base.p.is_zero(),
            property="reduce_base_shape", point=x, expected="[n,0] or [n,0]'",
            actual=base,
        )
    return col.done()


def make_shifted(base: FlagPoint, p: LaurentPoly) -> FlagPoint:
    """Expected value of ``upper(p)`` acting on a zero-polynomial point.

    On a straight base the coordinate is ``p`` shifted down by ``n``; on a
    primed base the antidiagonal representative flips its sign.
    """
    from .flagpoint import make_point

    q = p.shift(-base.n)
    return make_point(base.primed, base.n, -q if base.primed else q)


def _stabilizer_upper(rng: random.Random, b_min: int) -> GroupElement:
    g = multiply(lower(_rand_poly(rng, 1, 3)), torus(rng.choice(NONZERO_COEFFS)))
    return multiply(g, upper(_rand_poly(rng, b_min, b_min + 3)))


def _stabilizer_lower(rng: random.Random, c_min: int) -> GroupElement:
    g = multiply(torus(rng.choice(NONZERO_COEFFS)), upper(_rand_poly(rng, 0, 3)))
    return multiply(g, lower(_rand_poly(rng, c_min, c_min + 3)))


def check_beta(trials: int = 100, seed: int = DEFAULT_SEED) -> CheckReport:
    """The coefficient ratio is an I4 invariant and rescales under rotation."""
    col = _Collector("beta", seed)
    t = LaurentPoly.t_power
    for n in (1, 2, 3):
        start = straight(n, t(-n) + t(-n + 1))
        for i in range(trials):
            col.trial()
            rng = random.Random(derive_seed(seed, "beta_word", n, i))
            x = start
            for j in range(rng.randint(1, 3)):
                g = sample_subgroup(
                    SubgroupId.I4, seed=derive_seed(seed, "beta_g", n, i, j)
                )
                x = act(g, x)
            fine = classify_fine_i4(x)
            ok = fine.base.tags == ("open", "open") and fine.beta == 1
            col.check(
                ok,
                property="beta_constant", input=f"word {i} on {start}",
                expected="beta=1", actual=fine,
            )
    for i in range(trials):
        col.trial()
        rng = random.Random(derive_seed(seed, "beta_rot", i))
        n = rng.randint(1, 3)
        family = rng.choice(("E", "O"))
        label = OrbitLabel(family, n, ("open", "open"))
        x = sample_point(label, Level.I4Rot, derive_seed(seed, "beta_pt", i))
        gamma = rng.choice(NONZERO_COEFFS)
        before = classify_fine_i4(x).beta
        after = classify_fine_i4(rotate_point(gamma, x)).beta
        col.check(
            after == before / gamma,
            property="beta_rotation", point=x, gamma=gamma,
            expected=before / gamma, actual=after,
        )
    return col.done()


def check_distinguished(seed: int = DEFAULT_SEED) -> CheckReport:
    """Every distinguished point classifies to its own label."""
    col = _Collector("distinguished", seed)
    for level in Level:
        for label in _labels_in_range(level, -4, 4):
            col.trial()
            x = distinguished_point(label, level)
            got = classify(x, level)
            col.check(
                got == label,
                property="distinguished", level=level, point=x,
                expected=label, actual=got,
            )
    return col.done()


CHECK_NAMES = (
    "normal_form",
    "partition_and_refinement",
    "distinguished",
    "orbit_invariance",
    "involution",
    "structure",
    "beta",
)


def run_all(seed: int = DEFAULT_SEED, only: Optional[str] = None) -> list[CheckReport]:
    """Run every check with its default parameters."""
    reports: list[CheckReport] = []

    def want(name: str) -> bool:
        return only is None or only == name

    if want("normal_form"):
        reports.append(check_normal_form(1000, derive_seed(seed, "normal_form")))
    if want("partition_and_refinement"):
        reports.append(
            check_partition_and_refinement((-3, 3), 200, derive_seed(seed, "partition"))
        )
    if want("distinguished"):
        reports.append(check_distinguished(derive_seed(seed, "distinguished")))
    if want("orbit_invariance"):
        for level in Level:
            reports.append(
                check_orbit_invariance(
                    level, (-3, 3), 100, derive_seed(seed, "invariance", level), 20
                )
            )
    if want("involution"):
        for level in (Level.I1, Level.I3, Level.I4Rot):
            reports.append(
                check_involution(level, 500, derive_seed(seed, "involution", level))
            )
    if want("structure"):
        reports.append(check_structure((-3, 3), 200, derive_seed(seed, "structure")))
    if want("beta"):
        reports.append(check_beta(100, derive_seed(seed, "beta")))
    if not reports:
        raise ValueError(f"unknown check {only!r}; choose from {CHECK_NAMES}")
    return reports
