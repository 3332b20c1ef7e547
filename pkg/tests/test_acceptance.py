"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for the summary alone.
"""

import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from homalt.algebra import check_identities, hom_associator, is_hom_ideal, recheck_witness, two_sided_unit
from homalt.bimodule import (
    bimodule_irreducibility,
    direct_sum_bimodule,
    is_alternative_bimodule,
    is_hom_bimodule,
    ker_im_subbimodules,
    regular_bimodule,
    subbimodule_spin,
    twist_bimodule,
    untwist_bimodule,
)
from homalt.constructions import direct_sum, idempotent_split, quotient, untwist, yau_twist
from homalt.exactlin import Matrix, canonicalize, char_poly, is_zero, subspace_ops
from homalt.fixtures import FIXTURES, OCT_ALPHA_TABLE, a3p_3, a7_3, oct_alpha, oct_beta, parse_signed_table, split2
from homalt.generators import random_four_dim, random_hom_alternative
from homalt.structure import (
    IsoStatus,
    Status,
    derived_series,
    hom_ideal_closure,
    iso_obstruction,
    kernel_ideal,
    simplicity,
    solvability_equivalence_check,
)

from oracles import brute_hom_associator, sympy_charpoly, unit

CASES = 100


def span(n, *idx):
    return canonicalize([unit(n, i) for i in idx], n)


def report(number, title, failures):
    line = f"criterion {number:>2} {'PASS' if not failures else 'FAIL'}  {title}"
    if failures:
        line += "  [" + "; ".join(failures[:3]) + "]"
    return line


def criterion_1():
    f = []
    alg = oct_alpha()
    start = time.perf_counter()
    r = check_identities(alg)
    elapsed = time.perf_counter() - start
    want = {"multiplicative": True, "left_alternative": True, "right_alternative": True, "hom_associative": False}
    if r.flags() != want:
        f.append(f"flags {r.flags()}")
    if elapsed >= 1.0:
        f.append(f"took {elapsed:.2f}s")
    w = r.witnesses.get("hom_associative")
    rows = [list(alg.twist.row(i)) for i in range(8)]
    if w is None or list(w.defect) != brute_hom_associator(alg.product, rows, *(unit(8, i) for i in w.indices)):
        f.append("witness does not match brute force")
    return f


def criterion_2():
    f = []
    r = check_identities(oct_beta())
    want = {"multiplicative": False, "left_alternative": False, "right_alternative": False, "hom_associative": False}
    if r.flags() != want:
        f.append(f"measured flags changed: {r.flags()}")
    w = r.witnesses.get("multiplicative")
    if w is None or w.indices != (0, 0) or list(w.defect) != [-2] + [0] * 7:
        f.append(f"multiplicativity witness {w}")
    for wit in r.witnesses.values():
        if recheck_witness(oct_beta(), wit) != wit.defect:
            f.append(f"{wit.kind} witness does not re-verify")
    return f


def criterion_3():
    f = []
    alg = oct_alpha()
    ind = untwist(alg).induced
    r = check_identities(ind)
    if not (r.left_alternative and r.right_alternative and r.multiplicative):
        f.append("induced algebra not alternative")
    u = two_sided_unit(ind)
    if u is None or list(u) != unit(8, 0):
        f.append(f"unit {u}")
    w = r.witnesses.get("hom_associative")
    if r.hom_associative or w is None or is_zero(hom_associator(ind, *(unit(8, i) for i in w.indices))):
        f.append("no associativity witness")
    back = yau_twist(ind, alg.twist)
    table = {(i, j): (k, s) for i, j, k, s in parse_signed_table(OCT_ALPHA_TABLE)}
    for (i, j), (k, s) in table.items():
        if list(back.product[i][j]) != [s if t == k else 0 for t in range(8)]:
            f.append(f"retwisted product differs at ({i},{j})")
            break
    if back.twist != alg.twist:
        f.append("retwisted twist differs")
    return f


def criterion_4():
    f = []
    d = derived_series(a7_3())
    if d.dims != [3, 1, 0] or not d.solvable:
        f.append(f"a7_3 dims {d.dims} solvable {d.solvable}")
    d = derived_series(oct_alpha())
    if d.dims != [8, 8] or d.solvable:
        f.append(f"oct_alpha dims {d.dims} solvable {d.solvable}")
    return f


def criterion_5():
    f = []
    v = simplicity(oct_alpha())
    if v.status is not Status.CERTIFIED_YES or v.envelope_dim != 64:
        f.append(f"oct_alpha {v.status} envelope {v.envelope_dim}")
    for alg, want in ((a3p_3(), span(3, 0, 2)), (a7_3(), span(3, 0))):
        v = simplicity(alg)
        if v.status is not Status.CERTIFIED_NO or v.witness != want or not is_hom_ideal(alg, v.witness):
            f.append(f"{alg.name} {v.status} witness {v.witness}")
    return f


def criterion_6():
    f = []
    v = iso_obstruction(oct_alpha(), oct_beta())
    pa = [1, -1, 0, 0, 0, 0, 0, -1, 1]  # (x - 1)(x^7 - 1)
    pb = [1, 8, 28, 56, 70, 56, 28, 8, 1]  # (x + 1)^8
    if v.status is not IsoStatus.NOT_ISOMORPHIC:
        f.append(str(v.status))
    if v.char_polys != (pa, pb):
        f.append(f"char polys {v.char_polys}")
    if sympy_charpoly(oct_alpha().twist.to_rows()) != pa or sympy_charpoly(oct_beta().twist.to_rows()) != pb:
        f.append("oracle disagrees")
    return f


def criterion_7():
    f = []
    r = solvability_equivalence_check(oct_alpha())
    if not r.holds or r.twisted.solvable or r.induced.solvable:
        f.append("oct_alpha")
    for seed in range(10):
        alg, _ = random_four_dim(seed)
        r = solvability_equivalence_check(alg)
        if not r.holds or not all(r.term_checks):
            f.append(f"four-dim seed {seed}")
    return f


def criterion_8():
    f = []
    s = idempotent_split(split2())
    if (s.part_quotient.dim, s.part_kernel.dim) != (1, 1):
        f.append(f"dims {(s.part_quotient.dim, s.part_kernel.dim)}")
    if not s.verified:
        f.append("isomorphism not verified")
    return f


def criterion_9():
    f = []
    reg = regular_bimodule(oct_alpha())
    r = is_hom_bimodule(reg)
    if not r.ok:
        f.append(f"regular oct_alpha flags {r.flags()}")
    u = untwist_bimodule(reg)
    octo = FIXTURES["oct"]()
    if u != regular_bimodule(octo):
        f.append("untwist is not the regular octonion bimodule")
    if not is_alternative_bimodule(u).axioms_hold:
        f.append("untwisted bimodule fails the alternative bimodule axioms")
    a = oct_alpha().twist
    if twist_bimodule(u, a, a) != reg:
        f.append("twist/untwist round trip")
    v = bimodule_irreducibility(reg)
    if v.status is not Status.CERTIFIED_YES:
        f.append(f"regular oct_alpha {v.status}")
    v = bimodule_irreducibility(regular_bimodule(a3p_3()))
    if v.status is not Status.CERTIFIED_NO or set(v.components) != {span(3, 0, 2), span(3, 1)}:
        f.append(f"regular a3p_3 {v.status} {v.components}")
    k = ker_im_subbimodules(regular_bimodule(split2()))
    if k.kernel != span(2, 1) or not k.kernel_flag:
        f.append("split2 kernel flag")
    return f


def _closure_laws(closure, check, n, rng):
    seeds = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, 2))]
    extra = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, 2))]
    s = canonicalize(seeds, n)
    t = canonicalize(seeds + extra, n)
    cs, ct = closure(s), closure(t)
    return cs.contains(s) and ct.contains(cs) and closure(cs) == cs and bool(check(cs))


def _alt(alg):
    r = check_identities(alg)
    return r.multiplicative and r.left_alternative and r.right_alternative


def criterion_10():
    f = []
    names = sorted(FIXTURES)
    rng = random.Random(2024)
    for case in range(CASES):
        alg = FIXTURES[names[case % len(names)]]()
        if not _closure_laws(lambda s: hom_ideal_closure(alg, s), lambda s: is_hom_ideal(alg, s), alg.dim, rng):
            f.append(f"ideal closure case {case}")
    for case in range(CASES):
        alg, _ = random_hom_alternative(case, max_dim=4)
        bim = direct_sum_bimodule(regular_bimodule(alg), regular_bimodule(alg))
        if not _closure_laws(lambda s: subbimodule_spin(bim, s), lambda s: bim.operator_set.is_invariant(s), bim.dim, rng):
            f.append(f"subbimodule spin case {case}")
    for case in range(CASES):
        alg, _ = random_hom_alternative(1000 + case)
        if not kernel_ideal(alg)[1]:
            f.append(f"kernel ideal case {case}")
    for case in range(CASES):
        a, _ = random_hom_alternative(2000 + case, max_dim=5)
        b, _ = random_hom_alternative(3000 + case, max_dim=4)
        ok = _alt(yau_twist(a, a.twist)) and _alt(direct_sum(a, b))
        for ideal in (a.twist.kernel(), derived_series(a).term(1)):
            if is_hom_ideal(a, ideal):
                ok = ok and _alt(quotient(a, ideal)[0])
        if not ok:
            f.append(f"construction closure case {case}")
    for case in range(CASES):
        u = canonicalize([[rng.randint(-2, 2) for _ in range(5)] for _ in range(rng.randint(0, 4))], 5)
        v = canonicalize([[rng.randint(-2, 2) for _ in range(5)] for _ in range(rng.randint(0, 4))], 5)
        total, meet, _ = subspace_ops(u, v)
        if total.dim + meet.dim != u.dim + v.dim:
            f.append(f"grassmann case {case}")
    done = 0
    while done < CASES:
        m = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)])
        p = Matrix.from_rows([[rng.randint(-2, 2) for _ in range(4)] for _ in range(4)])
        if not p.is_invertible():
            continue
        if char_poly(p @ m @ p.inverse()) != char_poly(m):
            f.append(f"similarity case {done}")
        done += 1
    return f


CRITERIA = [
    (1, "oct_alpha identity flags, under 1 s", criterion_1),
    (2, "oct_beta measured flags with multiplicativity witness", criterion_2),
    (3, "untwisted octonions: alternative, unital, non-associative, exact retwist", criterion_3),
    (4, "derived series of a7_3 and oct_alpha", criterion_4),
    (5, "simplicity verdicts for oct_alpha, a3p_3, a7_3", criterion_5),
    (6, "oct_alpha and oct_beta not isomorphic by characteristic polynomial", criterion_6),
    (7, "solvability equivalence on oct_alpha and ten 4-dim twists", criterion_7),
    (8, "idempotent split of split2", criterion_8),
    (9, "bimodule suite", criterion_9),
    (10, "seeded property suites, 100 cases each", criterion_10),
]


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, capsys):
    failures = check()
    with capsys.disabled():
        print("\n" + report(number, title, failures))
    assert not failures


if __name__ == "__main__":
    bad = 0
    for number, title, check in CRITERIA:
        failures = check()
        bad += bool(failures)
        print(report(number, title, failures))
    sys.exit(1 if bad else 0)
