"""Acceptance criteria, one test each.

Every test appends a single PASS/FAIL/SKIP line to ``ACCEPTANCE_LINES``;
conftest prints them after the run. TSPLIB instances are looked up in the
vendored data directory and in any directories listed in
``STABCUT_INSTANCES`` (os.pathsep separated). An instance that cannot be
found counts as a failure, not a skip. Balasundaram-Butenko files
(``G15-1.mcut`` etc.) are looked up in ``STABCUT_BB_DIR``.
"""

import os
import time
from pathlib import Path

import numpy as np
import pytest

from stabcut import (
    brute_force,
    cut_weight,
    dec_solve,
    ec_solve,
    from_array,
    load_instance,
    sg3_solve,
    sg_solve,
    stabilizer_solve,
    total_weight,
)
from stabcut.formats import FormatError
from stabcut.stabilizer import StabilizerPolicy

from .conftest import DATA
from .helpers import ACCEPTANCE_LINES, random_suite

ROOT = Path(__file__).resolve().parents[1]

TOTALS = {"gr17": 37346, "bayg29": 66313, "hk48": 1153784, "berlin52": 762783, "brazil58": 3523646}
STABILIZER_WEIGHTS = {"gr17": 24986, "bayg29": 42693, "hk48": 771712, "berlin52": 470726, "brazil58": 2208793}
SG3_RATIOS = {"gr17": 0.669, "bayg29": 0.564, "hk48": 0.669, "berlin52": 0.617, "brazil58": 0.564}
LISTED_OPTIMA = {
    "dantzig42": 42638,
    "gr48": 320277,
    "hk48": 771712,
    "kroA100": 5897392,
    "kroB100": 5763047,
    "kroC100": 5890760,
    "kroD100": 5463250,
    "kroE100": 5986591,
    "gr120": 2156667,
}
BB_VALUES = {
    "G5-1": (126, 126),
    "G5-2": (40, 40),
    "G8-1": (1987, 1987),
    "G8-2": (1688, 1688),
    "G10-1": (1585, 1585),
    "G10-2": (1377, 1351),
    "G15-1": (399, 390),
    "G15-2": (594, 594),
    "G20-1": (273, 271),
    "G20-2": (285, 282),
}
POLICIES = [
    StabilizerPolicy(tie_break=t, survivor=s) for t in ("lex", "revlex") for s in ("small", "large")
]
MAX_DEVIATION = 0.005

NONNEG_SUITE = random_suite(2024, 200, (4, 30), 0, 100)
SIGNED_SUITE = random_suite(2025, 200, (2, 12), -50, 50)


def report(number, ok, title, detail):
    tag = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"AC{number} {tag:4} {title}: {detail}")
    return ok


def search_dirs():
    extra = os.environ.get("STABCUT_INSTANCES", "")
    return [DATA] + [Path(p) for p in extra.split(os.pathsep) if p]


def find_instance(name):
    for d in search_dirs():
        p = d / f"{name}.tsp"
        if p.is_file():
            return load_instance(p, "tsplib")[1]
    return None


def load_many(names):
    found, missing = {}, []
    for name in names:
        try:
            W = find_instance(name)
        except FormatError as exc:
            missing.append(f"{name} (rejected: {exc})")
            continue
        if W is None:
            missing.append(name)
        else:
            found[name] = W
    return found, missing


def known_deviations():
    table = {}
    path = ROOT / "KNOWN_DEVIATIONS"
    if path.is_file():
        for line in path.read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                name, expected, observed = line.split()[:3]
                table[name] = (int(expected), int(observed))
    return table


def check_stabilizer_table(instances, expected):
    """Compare stabilizer weights against ``expected`` under every policy."""
    devs = known_deviations()
    problems, notes = [], []
    for name, W in instances.items():
        target = expected[name]
        got = [stabilizer_solve(W, p).assignment.cut_weight for p in POLICIES]
        if target in got:
            matching = [p.describe() for p, g in zip(POLICIES, got) if g == target]
            notes.append(f"{name}={target} ({len(matching)}/4 policies)")
            continue
        closest = min(got, key=lambda g: abs(g - target))
        rel = abs(closest - target) / target
        if name in devs and devs[name] == (target, closest) and rel <= MAX_DEVIATION:
            notes.append(f"{name}={closest} vs {target} ({rel:.3%}, listed deviation)")
        else:
            problems.append(f"{name} got {sorted(set(got))}, want {target}")
    return problems, notes


def test_ac1_tsplib_totals():
    start = time.perf_counter()
    found, missing = load_many(TOTALS)
    wrong = [f"{n}={total_weight(W)}" for n, W in found.items() if total_weight(W) != TOTALS[n]]
    elapsed = time.perf_counter() - start
    ok = not missing and not wrong and elapsed < 1.0
    detail = f"matched {sorted(found)} in {elapsed:.2f}s"
    if missing:
        detail += f"; missing instance files: {', '.join(missing)}"
    if wrong:
        detail += f"; wrong totals: {', '.join(wrong)}"
    assert report(1, ok, "TSPLIB totals", detail), detail


def test_ac2_stabilizer_weights():
    found, missing = load_many(STABILIZER_WEIGHTS)
    start = time.perf_counter()
    problems, notes = check_stabilizer_table(found, STABILIZER_WEIGHTS)
    elapsed = time.perf_counter() - start
    ok = not missing and not problems and elapsed < 5.0
    detail = f"{'; '.join(notes)}; {elapsed:.2f}s"
    if missing:
        detail += f"; missing instance files: {', '.join(missing)}"
    if problems:
        detail += f"; mismatches: {', '.join(problems)}"
    assert report(2, ok, "stabilizer weights on TSPLIB set A", detail), detail


def test_ac3_stabilizer_optima():
    found, missing = load_many(LISTED_OPTIMA)
    start = time.perf_counter()
    problems, notes = check_stabilizer_table(found, LISTED_OPTIMA)
    elapsed = time.perf_counter() - start
    ok = not missing and not problems and elapsed < 30.0
    detail = f"{'; '.join(notes) or 'nothing checked'}; {elapsed:.2f}s"
    if missing:
        detail += f"; missing instance files: {', '.join(missing)}"
    if problems:
        detail += f"; mismatches: {', '.join(problems)}"
    assert report(3, ok, "stabilizer reaches known optima on TSPLIB set B", detail), detail


def test_ac4_sg3_ratios():
    found, missing = load_many(SG3_RATIOS)
    notes, problems = [], []
    for name, W in found.items():
        ratio = sg3_solve(W).cut_weight / total_weight(W)
        target = SG3_RATIOS[name]
        notes.append(f"{name} {ratio:.3f} vs {target}")
        if abs(ratio - target) > 0.03:
            problems.append(name)
    ok = not missing and not problems
    detail = "; ".join(notes)
    if missing:
        detail += f"; missing instance files: {', '.join(missing)}"
    if problems:
        detail += f"; outside +-0.03: {', '.join(problems)}"
    assert report(4, ok, "SG3 ratios", detail), detail


def test_ac5_ratio_guarantees():
    violations = []
    for k, W in enumerate(NONNEG_SUITE):
        total = total_weight(W)
        for label, weight, factor in (
            ("sg", sg_solve(W).cut_weight, 2),
            ("sg3", sg3_solve(W).cut_weight, 2),
            ("ec", ec_solve(W).assignment.cut_weight, 3),
        ):
            if factor * weight < total:
                violations.append(f"#{k} {label}")
    ok = not violations
    detail = f"{len(NONNEG_SUITE)} instances, {len(violations)} violations {violations[:5]}"
    assert report(5, ok, "SG/SG3 >= 1/2 and EC >= 1/3 of total", detail), detail


def _forest_consistent(res):
    z = res.assignment.z
    if not res.forest.is_acyclic():
        return False
    for e in res.forest.edges:
        if z[e.i - 1] * z[e.j - 1] != e.sign:
            return False
    for step in res.trace:
        if step.sign != (-1 if step.weight > 0 else 1):
            return False
    return True


def test_ac6_oracle_dominance():
    problems = []
    for k, W in enumerate(SIGNED_SUITE):
        opt = brute_force(W).optimal_weight
        stab = stabilizer_solve(W)
        results = {
            "stabilizer": stab.assignment,
            "ec": ec_solve(W).assignment,
            "dec": dec_solve(W).assignment,
            "sg": sg_solve(W),
            "sg3": sg3_solve(W),
        }
        for label, a in results.items():
            if a.cut_weight > opt:
                problems.append(f"#{k} {label} above optimum")
            if a.cut_weight != cut_weight(W, a.z):
                problems.append(f"#{k} {label} weight not reproducible")
        if not _forest_consistent(stab):
            problems.append(f"#{k} forest")
    ok = not problems
    detail = f"{len(SIGNED_SUITE)} instances x 5 heuristics, {len(problems)} problems {problems[:5]}"
    assert report(6, ok, "oracle dominance and consistency", detail), detail


def test_ac7_direction_invariance():
    bad = []
    for tie in ("lex", "revlex"):
        for k, W in enumerate(SIGNED_SUITE):
            a = stabilizer_solve(W, StabilizerPolicy(tie, "small")).assignment.cut_weight
            b = stabilizer_solve(W, StabilizerPolicy(tie, "large")).assignment.cut_weight
            if a != b:
                bad.append(f"#{k} {tie}")
    ok = not bad
    detail = f"{len(SIGNED_SUITE)} instances x 2 tie-breaks, {len(bad)} violations {bad[:5]}"
    assert report(7, ok, "survivor rule does not change the cut", detail), detail


def _same_output(W, policy):
    a = stabilizer_solve(W, StabilizerPolicy(policy.tie_break, policy.survivor, engine="heap"))
    b = stabilizer_solve(W, StabilizerPolicy(policy.tie_break, policy.survivor, engine="naive"))
    return (
        np.array_equal(a.assignment.z, b.assignment.z)
        and a.assignment.cut_weight == b.assignment.cut_weight
        and [s.as_line(0) for s in a.trace] == [s.as_line(0) for s in b.trace]
    )


def test_ac8_engines_and_scaling():
    suites = list(NONNEG_SUITE) + list(SIGNED_SUITE)
    found, _ = load_many(list(TOTALS) + list(LISTED_OPTIMA))
    suites += list(found.values())
    mismatches = sum(
        not _same_output(W, p) for W in suites for p in (POLICIES[0], POLICIES[3])
    )

    rng = np.random.default_rng(99)

    def complete(n):
        a = np.triu(rng.integers(1, 1001, (n, n)), 1)
        return from_array(a + a.T)

    W100, W1000 = complete(100), complete(1000)
    t100 = min(_timed(W100) for _ in range(5))
    t1000 = _timed(W1000)
    ok = mismatches == 0 and t100 < 0.050 and t1000 < 5.0
    detail = (
        f"{len(suites)} instances x 2 policies, {mismatches} engine mismatches; "
        f"n=100 {t100 * 1000:.1f} ms (< 50 ms), n=1000 {t1000:.2f} s (< 5 s)"
    )
    assert report(8, ok, "engine equivalence and scaling", detail), detail


def _timed(W):
    start = time.perf_counter()
    stabilizer_solve(W)
    return time.perf_counter() - start


def test_ac9_balasundaram_butenko():
    bb_dir = os.environ.get("STABCUT_BB_DIR")
    files = {}
    if bb_dir:
        files = {n: Path(bb_dir) / f"{n}.mcut" for n in BB_VALUES if (Path(bb_dir) / f"{n}.mcut").is_file()}
    if not files:
        ACCEPTANCE_LINES.append(
            "AC9 SKIP Balasundaram-Butenko optima: instance files not supplied (set STABCUT_BB_DIR)"
        )
        pytest.skip("Balasundaram-Butenko instance files not supplied")
    notes, problems = [], []
    for name, path in sorted(files.items()):
        _, W = load_instance(path, "mcut")
        opt, listed_stab = BB_VALUES[name]
        got_opt = brute_force(W, max_n=20).optimal_weight
        stab = stabilizer_solve(W).assignment.cut_weight
        notes.append(f"{name} opt {got_opt}/{opt} stabilizer {stab}/{listed_stab}")
        if got_opt != opt:
            problems.append(name)
    ok = not problems
    detail = "; ".join(notes)
    if problems:
        detail += f"; optimum mismatch: {', '.join(problems)}"
    assert report(9, ok, "Balasundaram-Butenko optima", detail), detail
