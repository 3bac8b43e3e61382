"""Acceptance gate: thirteen desk-scale checks, one visible line each.

Each test prints exactly one [PASS]/[FAIL] line with its elapsed time and
then asserts, so a red criterion is loud in both the stream and the pytest
summary.
"""

import random
import time

import pytest

from knotcert.braid import (
    BraidWord,
    cable_braid,
    closure_stats,
    conjugate,
    kn_braid,
    kn_plus_braid,
    linking_number,
    restrict_components,
)
from knotcert.dehornoy import floor_exceeds_one
from knotcert.errors import BudgetExceededError
from knotcert.homfly import alexander, coefficient_polys, homfly, p0
from knotcert.montesinos import (
    ell0_triple,
    ellinf_triple,
    is_lspace_m1,
    surgery_slopes,
    ell_family,
)
from knotcert.poly import LaurentPoly1
from knotcert.positivity import (
    genus_kn,
    ito_obstruction,
    sharpness,
    skein_decomposition_check,
    verify_topterm,
)
from knotcert.traintrack import (
    is_efficient_up_to,
    is_irreducible,
    kn_map,
    pf_eigenvalue,
    steps_to_reach,
    transition,
    validate,
)


def report(capsys, cid, ok, detail, started, limit):
    elapsed = time.perf_counter() - started
    verdict = "PASS" if ok and elapsed < limit else "FAIL"
    with capsys.disabled():
        print(f"[{verdict}] {cid}: {detail} ({elapsed:.2f}s, limit {limit:.0f}s)")
    assert ok, f"{cid}: {detail}"
    assert elapsed < limit, f"{cid} exceeded its {limit}s budget at {elapsed:.2f}s"


def random_word(rng, max_strands=4, min_len=1, max_len=8):
    n = rng.randint(2, max_strands)
    k = rng.randint(min_len, max_len)
    pool = [i for i in range(-(n - 1), n) if i != 0]
    return BraidWord(n, tuple(rng.choice(pool) for _ in range(k)))


def test_c01_unlink_and_torus_baseline(capsys):
    t0 = time.perf_counter()
    unlink = p0(BraidWord(2, ()))
    ok = unlink == LaurentPoly1.from_pairs("v", [(-2, 1), (0, -1)])
    deg = p0(BraidWord(2, (1,) * 5)).degree
    ok = ok and deg == 6
    report(
        capsys, "C1", ok,
        f"p0(2-unlink) = v^-2 - 1 and deg p0 of the (2,5) torus braid = {deg}",
        t0, 1.0,
    )


def test_c02_topterm_n2(capsys):
    t0 = time.perf_counter()
    rep = verify_topterm(2)
    ok = rep.ok and (rep.exponent, rep.coefficient) == (18, 1)
    report(
        capsys, "C2", ok,
        f"p0(K_2) top term {rep.coefficient:+d}*v^{rep.exponent}, expected +v^18",
        t0, 5.0,
    )


def test_c03_topterm_n3_and_stretch_n4(capsys):
    t0 = time.perf_counter()
    rep3 = verify_topterm(3)
    ok = rep3.ok and (rep3.exponent, rep3.coefficient) == (36, -1)
    try:
        rep4 = verify_topterm(4)
        ok = ok and rep4.ok and (rep4.exponent, rep4.coefficient) == (60, 1)
        stretch = f"n=4 gave {rep4.coefficient:+d}*v^{rep4.exponent}"
    except BudgetExceededError as exc:
        stretch = f"n=4 skipped ({exc})"
    report(
        capsys, "C3", ok,
        f"p0(K_3) top term {rep3.coefficient:+d}*v^{rep3.exponent}, expected -v^36; {stretch}",
        t0, 300.0,
    )


def test_c04_skein_decomposition(capsys):
    t0 = time.perf_counter()
    reps = [skein_decomposition_check(n) for n in (2, 3)]
    ok = all(r.holds for r in reps)
    report(
        capsys, "C4", ok,
        "p0 recursion over cable and kn_plus pieces exact at n=2 and n=3",
        t0, 600.0,
    )


def test_c05_sharpness_examples(capsys):
    t0 = time.perf_counter()
    hopf = sharpness(BraidWord(2, (1, 1)))
    trefoil = sharpness(BraidWord(2, (1, 1, 1)))
    cable2 = sharpness(cable_braid(2))
    knplus3 = sharpness(kn_plus_braid(3), node_budget=2_000_000)
    ok = hopf.sharp and trefoil.sharp and not cable2.sharp and not knplus3.sharp
    report(
        capsys, "C5", ok,
        "Bennequin-type degree bound sharp for sigma_1^2 and sigma_1^3, "
        "strict for cable(2) and kn_plus(3)",
        t0, 300.0,
    )


def test_c06_random_positive_words_respect_bound(capsys):
    t0 = time.perf_counter()
    rng = random.Random(20260815)
    checked = 0
    ok = True
    for _ in range(200):
        n = rng.randint(2, 5)
        word = tuple(rng.randint(1, n - 1) for _ in range(rng.randint(1, 12)))
        rep = sharpness(BraidWord(n, word), node_budget=500_000)
        ok = ok and rep.p0_degree <= rep.bound
        checked += 1
    report(
        capsys, "C6", ok and checked == 200,
        f"deg p0 <= strands + crossings - components on {checked} random positive words",
        t0, 120.0,
    )


def test_c07_ito_obstruction(capsys):
    t0 = time.perf_counter()
    t23 = ito_obstruction(BraidWord(2, (1, 1, 1)), genus=1)
    t25 = ito_obstruction(BraidWord(2, (1,) * 5), genus=2)
    k2 = ito_obstruction(kn_braid(2), genus=6)
    z0 = {a: c for a, z, c in k2.tilde_poly.to_triples() if z == 0}
    ok = (
        t23.positive
        and t25.positive
        and not k2.positive
        and max(z0) == 3
        and z0[3] == -1
    )
    report(
        capsys, "C7", ok,
        "normalized HOMFLY positive for T(2,3) and T(2,5); negative for K_2 "
        f"with z^0 top term {z0[max(z0)]:+d}*alpha^{max(z0)}",
        t0, 10.0,
    )


def test_c08_alexander_span_matches_genus(capsys):
    t0 = time.perf_counter()
    poly = alexander(kn_braid(2))
    span = poly.degree - poly.order
    ok = span == 12 and span == 2 * genus_kn(2)
    report(
        capsys, "C8", ok,
        f"Alexander span of K_2 = {span} = 2 * genus formula value {genus_kn(2)}",
        t0, 5.0,
    )


def test_c09_lspace_sweep(capsys):
    t0 = time.perf_counter()
    ok = all(
        is_lspace_m1(*ell0_triple(k)).is_lspace
        and is_lspace_m1(*ellinf_triple(k)).is_lspace
        for k in range(1, 501)
    )
    from fractions import Fraction

    control = is_lspace_m1(Fraction(1, 2), Fraction(1, 3), Fraction(1, 7))
    ok = ok and not control.is_lspace and control.witness == (5, 3)
    report(
        capsys, "C9", ok,
        "both resolvent families are L-spaces for k = 1..500; "
        f"negative control rejected with witness {control.witness}",
        t0, 5.0,
    )


def test_c10_determinants_and_slopes(capsys):
    t0 = time.perf_counter()
    ok = True
    for k in range(1, 501):
        fam = ell_family(k)
        slo = surgery_slopes(k)
        ok = ok and fam.recursion_holds and fam.endpoints_match and slo.consistent
    ok = ok and surgery_slopes(1).lspace_slope == 14
    report(
        capsys, "C10", ok,
        "determinant closed forms, recursion, Montesinos endpoints, and "
        "surgery arithmetic agree for k = 1..500; k=1 slope = 14",
        t0, 5.0,
    )


def test_c11_traintrack_certificates(capsys):
    t0 = time.perf_counter()
    ok = True
    for n in range(3, 9):
        gm = kn_map(n)
        diag = validate(gm)
        M = transition(gm)
        lam = pf_eigenvalue(M)
        eff = is_efficient_up_to(gm, 2 * (2 * n + 2))
        spine = M.labels.index(f"e{n}")
        covers = all(M.rows[i][spine] >= 1 for i in range(len(M.labels)))
        reaches = all(
            (steps_to_reach(gm, f"e{i}", f"e{n}", 2 * n + 2) or 10**9) <= 2 * n
            for i in range(1, 2 * n + 3)
        )
        ok = ok and diag.ok and is_irreducible(M) and lam > 1 + 1e-6
        ok = ok and eff.efficient and covers and reaches
    report(
        capsys, "C11", ok,
        "graph maps for n = 3..8 validate, with irreducible real block, "
        "dilatation > 1, no backtracking, and both spine constraints",
        t0, 120.0,
    )


def test_c12_dehornoy_floor(capsys):
    t0 = time.perf_counter()
    certs = [floor_exceeds_one(n) for n in range(2, 6)]
    ok = all(c.holds for c in certs)
    report(
        capsys, "C12", ok,
        "Delta^4 precedes the conjugated braid for n = 2..5 "
        f"(reduction steps {[c.steps for c in certs]})",
        t0, 300.0,
    )


def test_c13_crosschecks(capsys):
    t0 = time.perf_counter()
    rng = random.Random(1530)
    ok = True

    # skein relation at a random inserted crossing
    for _ in range(100):
        b = random_word(rng, max_len=7)
        cut = rng.randint(0, len(b.letters))
        idx = rng.randint(1, b.strands - 1)
        head, tail = b.letters[:cut], b.letters[cut:]
        plus = homfly(BraidWord(b.strands, head + (idx,) + tail))
        minus = homfly(BraidWord(b.strands, head + (-idx,) + tail))
        zero = homfly(BraidWord(b.strands, head + tail))
        ok = ok and plus.shift(-1, 0) - minus.shift(1, 0) == zero.shift(0, 1)

    # Markov moves: conjugation and both stabilizations
    for _ in range(100):
        b = random_word(rng)
        g = random_word(rng, max_strands=b.strands, max_len=3)
        g = BraidWord(b.strands, g.letters)
        sign = rng.choice((1, -1))
        wider = BraidWord(b.strands + 1, b.letters + (sign * b.strands,))
        ok = ok and homfly(conjugate(b, g)) == homfly(b) == homfly(wider)

    # p0 via the walk engine against the full polynomial
    for _ in range(100):
        b = random_word(rng)
        comps = closure_stats(b).components
        ok = ok and p0(b) == coefficient_polys(homfly(b), comps).coeffs[0]

    # product law for split-style two-component data:
    # p0(L) = v^(2 lk) (v^-2 - 1) p0(L_1) p0(L_2)
    split = LaurentPoly1.from_pairs("v", [(-2, 1), (0, -1)])
    done = 0
    while done < 100:
        b = random_word(rng, min_len=2)
        if closure_stats(b).components != 2:
            continue
        lk = linking_number(b, 1, 2)
        left = p0(restrict_components(b, [1]))
        right = p0(restrict_components(b, [2]))
        ok = ok and p0(b) == (split * left * right).shift(2 * lk)
        done += 1

    report(
        capsys, "C13", ok,
        "skein relation, Markov invariance, dual-path p0, and the "
        "two-component product law hold on 100 random instances each",
        t0, 300.0,
    )
