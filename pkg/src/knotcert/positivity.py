"""Sharpness degree calculus for positive braid words, Ito's braid-positivity
obstruction, and the verification pipeline for the zeroth-coefficient top term
of the beta family.

For an all-positive word on s strands with e crossings whose closure has
#L components, deg p0 <= s + e - #L always; the word is called sharp when
equality holds.  Ito's criterion: if K is a braid positive knot of genus g,
then P~(alpha, z) = (-alpha)^(-g) * P_K(v, z) under -v^2 = alpha has only
positive coefficients, so any negative coefficient certifies that K is not
braid positive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import (
    BraidWord,
    beta_braid,
    cable_braid,
    closure_stats,
    kn_braid,
    kn_plus_braid,
)
from .errors import BraidError, BudgetExceededError
from .homfly import alexander, homfly, p0
from .poly import LaurentPoly1, LaurentPoly2, specialize

__all__ = [
    "SharpnessReport",
    "ItoVerdict",
    "TopTermReport",
    "DecompositionReport",
    "SuiteEntry",
    "sharpness",
    "ito_obstruction",
    "genus_kn",
    "verify_topterm",
    "skein_decomposition_check",
    "nonsharpness_suite",
]


@dataclass(frozen=True)
class SharpnessReport:
    strands: int
    crossings: int
    components: int
    p0_degree: int
    bound: int
    sharp: bool


@dataclass(frozen=True)
class ItoVerdict:
    """Obstruction outcome.  positive=False certifies the closure is not
    braid positive; positive=True is inconclusive.  witness is a negative
    monomial (alpha_exp, z_exp, coeff), present exactly when positive=False.
    genus_alexander_mismatch warns when the supplied genus differs from the
    Alexander top degree; equality is guaranteed only for fibered knots, so
    a mismatch does not invalidate the verdict by itself.
    """

    genus: int
    tilde_poly: LaurentPoly2
    positive: bool
    witness: tuple[int, int, int] | None
    genus_alexander_mismatch: bool


@dataclass(frozen=True)
class TopTermReport:
    n: int
    exponent: int
    coefficient: int
    expected_exponent: int
    expected_coefficient: int
    ok: bool


@dataclass(frozen=True)
class DecompositionReport:
    n: int
    holds: bool
    lhs: LaurentPoly1
    rhs: LaurentPoly1


@dataclass(frozen=True)
class SuiteEntry:
    """One nonsharpness-suite row.  report is None when the entry exceeded
    its budget, in which case ok is None (unknown), never a guess."""

    label: str
    expected_sharp: bool
    report: SharpnessReport | None
    note: str = ""

    @property
    def ok(self) -> bool | None:
        if self.report is None:
            return None
        return self.report.sharp == self.expected_sharp


def sharpness(
    b: BraidWord, *, node_budget: int = 200_000, max_strands: int = 8
) -> SharpnessReport:
    """Compare deg p0 of the closure against strands + crossings - components."""
    if not b.is_positive:
        raise BraidError("sharpness is defined for all-positive words only")
    stats = closure_stats(b)
    bound = b.strands + b.crossings - stats.components
    degree = p0(b, node_budget=node_budget, max_strands=max_strands).degree
    if degree > bound:
        raise AssertionError(f"degree bound violated: {degree} > {bound}")
    return SharpnessReport(
        strands=b.strands,
        crossings=b.crossings,
        components=stats.components,
        p0_degree=degree,
        bound=bound,
        sharp=degree == bound,
    )


def ito_obstruction(
    b: BraidWord,
    genus: int,
    *,
    engine: str = "hecke",
    max_strands: int = 8,
    node_budget: int = 200_000,
) -> ItoVerdict:
    """Evaluate P~ = (-alpha)^(-g) P|_{-v^2=alpha} for the closure of b.

    The closure must be a knot and genus its Seifert genus.  A negative
    coefficient in P~ certifies non-braid-positivity.
    """
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    stats = closure_stats(b)
    if stats.components != 1:
        raise BraidError("the Ito obstruction applies to knots only")
    P = homfly(b, engine=engine, max_strands=max_strands, node_budget=node_budget)
    tilde = specialize(P, "v2_to_neg_alpha").shift(-genus, 0, (-1) ** genus)
    negatives = [
        (e2, -e1, e1, c) for (e1, e2), c in tilde.terms.items() if c < 0
    ]
    witness = None
    if negatives:
        z_exp, _, a_exp, coeff = min(negatives)
        witness = (a_exp, z_exp, coeff)
    alex_degree = alexander(b).degree
    return ItoVerdict(
        genus=genus,
        tilde_poly=tilde,
        positive=witness is None,
        witness=witness,
        genus_alexander_mismatch=alex_degree != genus,
    )


def genus_kn(n: int) -> int:
    """Seifert genus of the closure of beta_n, (3n^2 - n + 2)/2, for even n.

    The closed form is established for even n only; odd n is rejected rather
    than extrapolated.
    """
    if n < 2 or n % 2 != 0:
        raise ValueError("the genus formula is available for even n >= 2 only")
    return (3 * n * n - n + 2) // 2


def verify_topterm(
    n: int, *, node_budget: int = 5_000_000, max_strands: int = 8
) -> TopTermReport:
    """Check that p0 of the closure of beta_n has top term (-1)^n v^(3n^2+3n)."""
    if n < 2:
        raise ValueError("top term verification needs n >= 2")
    poly = p0(kn_braid(n), node_budget=node_budget, max_strands=max_strands)
    exponent, coefficient = poly.top_term()
    expected_exponent = 3 * n * n + 3 * n
    expected_coefficient = (-1) ** n
    return TopTermReport(
        n=n,
        exponent=exponent,
        coefficient=coefficient,
        expected_exponent=expected_exponent,
        expected_coefficient=expected_coefficient,
        ok=(exponent, coefficient) == (expected_exponent, expected_coefficient),
    )


def skein_decomposition_check(
    n: int, *, node_budget: int = 5_000_000, max_strands: int = 8
) -> DecompositionReport:
    """Verify the zeroth-coefficient recursion

        p0(beta_n) = sum_{k=1}^{n-1} v^(-2(k-1)) (1 - v^-2) v^(2(3(n-k)k+k))
                          * p0(cable_k) * p0(beta_{n-k})
                     + v^(-2(n-1)) * p0(kn_plus_n)

    by computing both sides independently with the p0 engine.
    """
    if n < 2:
        raise ValueError("the decomposition needs n >= 2")

    def q0(b: BraidWord) -> LaurentPoly1:
        return p0(b, node_budget=node_budget, max_strands=max_strands)

    lhs = q0(kn_braid(n))
    one_minus = LaurentPoly1.from_pairs("v", [(0, 1), (-2, -1)])
    rhs = LaurentPoly1.zero("v")
    for k in range(1, n):
        factor = one_minus.shift(2 * (3 * (n - k) * k + k) - 2 * (k - 1))
        rhs = rhs + factor * q0(cable_braid(k)) * q0(kn_braid(n - k))
    rhs = rhs + q0(kn_plus_braid(n)).shift(-2 * (n - 1))
    return DecompositionReport(n=n, holds=lhs == rhs, lhs=lhs, rhs=rhs)


def nonsharpness_suite(
    n_max: int, *, node_budget: int = 5_000_000, max_strands: int = 8
) -> list[SuiteEntry]:
    """Sharpness sweep: the trefoil control must be sharp, every cable braid
    X_k^3 . [1..k-1] for k >= 2 and every kn_plus braid for n >= 3 must not be.
    """
    jobs: list[tuple[str, BraidWord, bool]] = [
        ("trefoil control", BraidWord(2, (1, 1, 1)), True)
    ]
    for k in range(2, n_max + 1):
        jobs.append((f"cable k={k}", cable_braid(k), False))
    for n in range(3, n_max + 1):
        jobs.append((f"kn_plus n={n}", kn_plus_braid(n), False))
    entries = []
    for label, braid, expected in jobs:
        try:
            report = sharpness(braid, node_budget=node_budget, max_strands=max_strands)
            entries.append(SuiteEntry(label, expected, report))
        except BudgetExceededError as exc:
            entries.append(SuiteEntry(label, expected, None, note=str(exc)))
    return entries
