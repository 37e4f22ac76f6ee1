"""Acceptance criteria 1-10, one pass/fail line each.

Run directly with ``python3 tests/test_acceptance.py`` or through pytest;
either way the lines are printed in an "acceptance criteria" section.
"""

import os
import subprocess
import sys
import time
from collections import Counter
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import conftest  # noqa: E402
from conftest import CORPUS, EXTRA, LATTICES, ROOT, load_lattice_meadow  # noqa: E402
from meadows import build_M, parse_ring  # noqa: E402
from meadows.construct import (build_group_algebra_meadow, check_product_structure,  # noqa: E402
                               decompose_local, meadow_product, meadows_isomorphic, subgroups,
                               verify_meadow_iso)
from meadows.finite_ring import cyclic_group_table, make_quotient, make_zn  # noqa: E402
from meadows.ideals import enumerate_ideals, ideal_intersection, maximal_ideals  # noqa: E402
from meadows.meadow import (check_common, check_pre_meadow, check_transition_maps,  # noqa: E402
                            is_common, is_local, is_local_by_definition, meadow_atoms)


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    conftest._acceptance_lines.append(line)
    print(line)
    assert ok, line


def test_criterion_1_z6_meadow():
    start = time.perf_counter()
    m = build_M(make_zn(6))
    pre, common = check_pre_meadow(m), check_common(m)
    elapsed = time.perf_counter() - start
    laws = [r for r in pre.results + common.results
            if r.name.startswith(("P", "M")) and r.name[1:].isdigit()]
    labels = {i.label() for i in m.ideals}
    ok = (m.dl.size == 4 and labels == {"(0)", "(2)", "(3)", "(1)"} and m.size == 12
          and len(laws) == 14 and all(r.passed and not r.sampled for r in laws)
          and bool(is_common(m)) and elapsed < 1.0)
    report(1, ok, f"M(Z6): {m.dl.size} vertices {sorted(labels)}, {m.size} elements, "
                  f"{sum(r.passed for r in laws)}/14 laws exhaustive, {elapsed:.3f}s")


def _unit_masks(r, ideals):
    masks = {}
    for i in ideals:
        q, proj = make_quotient(r, i)
        masks[i] = q.unit_mask[proj.map]
    return masks


def test_criterion_2_inverse_intersection():
    start = time.perf_counter()
    exceptions = {}
    for spec in ["zn:6", "zn:12", "poly:p=2,mod=[0,0,1]", "prod:(zn:2,zn:4)"]:
        r = parse_ring(spec)
        ideals = enumerate_ideals(r)
        masks = _unit_masks(r, ideals)
        bad = 0
        for i, j in product(ideals, ideals):
            meet = masks[ideal_intersection(i, j)]
            bad += int((meet != (masks[i] & masks[j])).sum())
        exceptions[spec] = bad
    elapsed = time.perf_counter() - start
    ok = all(v == 0 for v in exceptions.values()) and elapsed < 5.0
    report(2, ok, f"exceptions {exceptions}, {elapsed:.3f}s")


def test_criterion_3_atoms_are_maximal_ideals():
    problems = []
    for spec in list(CORPUS) + EXTRA:
        r = parse_ring(spec)
        m = build_M(r)
        atoms = {frozenset(m.ideals[x.vertex].members) for x in meadow_atoms(m)}
        maxes = {frozenset(i.members) for i in maximal_ideals(r)}
        local = is_local(m)
        if atoms != maxes:
            problems.append(f"{spec}: atoms differ from maximal ideals")
        if local != (len(maxes) == 1):
            problems.append(f"{spec}: locality {local} with {len(maxes)} maximal ideals")
        if local != is_local_by_definition(m):
            problems.append(f"{spec}: locality tests disagree")
    count = len(CORPUS) + len(EXTRA)
    report(3, not problems, f"{count} rings checked" + (f"; {problems}" if problems else ""))


def test_criterion_4_decomposition():
    start = time.perf_counter()
    z6 = decompose_local(build_M(make_zn(6)))
    m12 = build_M(make_zn(12))
    z12 = decompose_local(m12)
    permuted = decompose_local(m12, idempotent_order=list(reversed(range(len(z12.idempotents)))))
    elapsed = time.perf_counter() - start
    orders12 = sorted(f.base_ring.order for f in z12.factors)
    same = Counter(z12.canonical_forms()) == Counter(permuted.canonical_forms())
    ok = (len(z6.factors) == 2 and all(is_local(f) for f in z6.factors) and z6.report.ok
          and verify_meadow_iso(z6.iso).ok and z12.report.ok and orders12 == [3, 4]
          and same and elapsed < 5.0)
    report(4, ok, f"Z6 -> {len(z6.factors)} local factors, Z12 factor orders {orders12}, "
                  f"permutation invariant {same}, {elapsed:.3f}s")


def test_criterion_5_diamond():
    d = load_lattice_meadow("pi1pi1")
    pre = check_pre_meadow(d)
    res = is_common(d)
    maximal = [d.vertex_label(v) for v in res.maximal] if not res else []
    ok = (pre.ok and not res and str(res.witness) == "(1,0)@top" and len(maximal) == 2
          and is_local(d))
    report(5, ok, f"P1-P10 {'hold' if pre.ok else 'fail'}, witness {res.witness}, "
                  f"maximal {maximal}, local {is_local(d)}")


def test_criterion_6_products():
    pool = {"M(Z4)": build_M(make_zn(4)), "M(F4)": build_M(parse_ring("poly:p=2,mod=[1,1,1]")),
            "diamond": load_lattice_meadow("pi1pi1")}
    failures = []
    for (pn, p), (qn, q) in product(pool.items(), repeat=2):
        prod = meadow_product(p, q)
        expected = bool(is_common(p)) and bool(is_common(q))
        if bool(is_common(prod)) != expected or not check_product_structure(prod).ok:
            failures.append(f"{pn} x {qn}")
    report(6, not failures, "9 ordered pairs" + (f"; failing {failures}" if failures else ""))


def test_criterion_7_isomorphism():
    yes = meadows_isomorphic(build_M(make_zn(6)), build_M(parse_ring("prod:(zn:2,zn:3)")))
    no = meadows_isomorphic(load_lattice_meadow("z4_one_child"),
                            load_lattice_meadow("z4_two_children"))
    ok = (yes.status == "yes" and verify_meadow_iso(yes.iso).ok and no.status == "no"
          and "lattice" in no.reason)
    report(7, ok, f"M(Z6) vs M(Z2xZ3): {yes.status}; Z4 shapes: {no.status} ({no.reason})")


def test_criterion_8_transition_maps():
    failing = [spec for spec in list(CORPUS) + EXTRA
               if not check_transition_maps(build_M(parse_ring(spec))).ok]
    if not check_transition_maps(load_lattice_meadow("pi1pi1")).ok:
        failing.append("pi1pi1")
    report(8, not failing, f"{len(CORPUS) + len(EXTRA) + 1} meadows"
                           + (f"; failing {failing}" if failing else ""))


def test_criterion_9_group_algebra_meadows():
    parts = []
    ok = True
    for base, orders, tag in [("zn:2", [2], "F2[C2]"), ("zn:3", [2, 2], "F3[C2xC2]")]:
        m = build_group_algebra_meadow(parse_ring(base), orders)
        count = len(subgroups(cyclic_group_table(orders)[0]))
        pre = check_pre_meadow(m).ok
        common = bool(is_common(m))
        fine = pre and common and m.dl.size == count
        ok &= fine
        parts.append(f"{tag}: P1-P10 {pre}, common {common}, "
                     f"{m.dl.size} vertices for {count} subgroups")
    report(9, ok, "; ".join(parts))


CLI_COMMANDS = [
    ["meadow-build", "zn:6", "--dot"],
    ["meadow-check", "zn:12", "--json"],
    ["meadow-check", "custom-lattice", str(LATTICES / "pi1pi1.json")],
    ["meadow-decompose", "zn:12"],
    ["meadow-product", "zn:2", "zn:3", "--json"],
    ["meadow-atoms", "prod:(zn:2,zn:4)"],
]


def _run_cli(argv, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    proc = subprocess.run([sys.executable, "-m", "meadows", *argv], capture_output=True,
                          env=env, cwd=ROOT)
    return proc.returncode, proc.stdout


def test_criterion_10_cli_determinism():
    differing = []
    for argv in CLI_COMMANDS:
        first, second = _run_cli(argv, 1), _run_cli(argv, 2024)
        if first != second or not first[1]:
            differing.append(" ".join(argv))
    report(10, not differing, f"{len(CLI_COMMANDS)} commands byte-identical across hash seeds"
                              + (f"; differing {differing}" if differing else ""))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
