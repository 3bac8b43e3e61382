"""Exact sparse Laurent polynomials in one and two variables.

Coefficients are arbitrary-precision integers; storage is a sparse
exponent-to-coefficient mapping with zero terms pruned on construction.
Two shapes cover every invariant in the toolkit:

* ``LaurentPoly1``: one variable (tag ``v``, ``t``, ``alpha``, or ``z``).
* ``LaurentPoly2``: two variables (tags ``(v, z)`` or ``(alpha, z)``).

``specialize`` implements the substitutions the verification pipeline needs:
v -> 1, z^2 -> t - 2 + 1/t (the Alexander specialization), and
v^2 -> -alpha.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping

__all__ = ["LaurentPoly1", "LaurentPoly2", "specialize"]


def _clean(items: Iterable[tuple] | Mapping) -> dict:
    if isinstance(items, Mapping):
        items = items.items()
    out: dict = {}
    for exp, coeff in items:
        if coeff:
            out[exp] = out.get(exp, 0) + coeff
            if not out[exp]:
                del out[exp]
    return out


@dataclass(frozen=True)
class LaurentPoly1:
    """Sparse Laurent polynomial in a single variable over the integers."""

    var: str
    terms: Mapping[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terms", MappingProxyType(_clean(self.terms)))

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, var: str) -> "LaurentPoly1":
        return cls(var, {})

    @classmethod
    def one(cls, var: str) -> "LaurentPoly1":
        return cls(var, {0: 1})

    @classmethod
    def monomial(cls, var: str, exp: int, coeff: int = 1) -> "LaurentPoly1":
        return cls(var, {exp: coeff})

    # ring operations ---------------------------------------------------

    def _check(self, other: "LaurentPoly1") -> None:
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var!r} vs {other.var!r}")

    def __add__(self, other: "LaurentPoly1") -> "LaurentPoly1":
        self._check(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, 0) + c
        return LaurentPoly1(self.var, merged)

    def __sub__(self, other: "LaurentPoly1") -> "LaurentPoly1":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly1":
        return LaurentPoly1(self.var, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly1 | int") -> "LaurentPoly1":
        if isinstance(other, int):
            return LaurentPoly1(self.var, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly1(self.var, out)

    __rmul__ = __mul__

    def shift(self, exp: int, coeff: int = 1) -> "LaurentPoly1":
        """Multiply by the monomial coeff * var^exp."""
        return LaurentPoly1(self.var, {e + exp: c * coeff for e, c in self.terms.items()})

    def __pow__(self, k: int) -> "LaurentPoly1":
        if k < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = LaurentPoly1.one(self.var)
        for _ in range(k):
            result = result * self
        return result

    # queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_positive(self) -> bool:
        """True when every stored coefficient is positive (vacuously for 0)."""
        return all(c > 0 for c in self.terms.values())

    @property
    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(self.terms)

    @property
    def order(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no order")
        return min(self.terms)

    def top_term(self) -> tuple[int, int]:
        """Highest-exponent monomial as (exponent, coefficient)."""
        e = self.degree
        return e, self.terms[e]

    def coeff(self, exp: int) -> int:
        return self.terms.get(exp, 0)

    def evaluate(self, x: Fraction | int) -> Fraction:
        """Exact evaluation; negative exponents need a nonzero argument."""
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self.terms.items():
            total += c * x ** e
        return total

    # serialization -------------------------------------------------------

    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in sorted(self.terms.items())]

    @classmethod
    def from_pairs(cls, var: str, pairs: Iterable[Iterable[int]]) -> "LaurentPoly1":
        return cls(var, {int(e): int(c) for e, c in pairs})

    def __str__(self) -> str:
        return _render(sorted(self.terms.items()), (self.var,), lambda e: (e,))


@dataclass(frozen=True)
class LaurentPoly2:
    """Sparse Laurent polynomial in two variables over the integers."""

    vars: tuple[str, str]
    terms: Mapping[tuple[int, int], int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vars", tuple(self.vars))
        object.__setattr__(self, "terms", MappingProxyType(_clean(self.terms)))

    @classmethod
    def zero(cls, vars: tuple[str, str] = ("v", "z")) -> "LaurentPoly2":
        return cls(vars, {})

    @classmethod
    def one(cls, vars: tuple[str, str] = ("v", "z")) -> "LaurentPoly2":
        return cls(vars, {(0, 0): 1})

    @classmethod
    def monomial(
        cls, vars: tuple[str, str], e1: int, e2: int, coeff: int = 1
    ) -> "LaurentPoly2":
        return cls(vars, {(e1, e2): coeff})

    def _check(self, other: "LaurentPoly2") -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars!r} vs {other.vars!r}")

    def __add__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        self._check(other)
        merged = dict(self.terms)
        for e, c in other.terms.items():
            merged[e] = merged.get(e, 0) + c
        return LaurentPoly2(self.vars, merged)

    def __sub__(self, other: "LaurentPoly2") -> "LaurentPoly2":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2(self.vars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly2 | int") -> "LaurentPoly2":
        if isinstance(other, int):
            return LaurentPoly2(self.vars, {e: c * other for e, c in self.terms.items()})
        self._check(other)
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return LaurentPoly2(self.vars, out)

    __rmul__ = __mul__

    def shift(self, e1: int, e2: int, coeff: int = 1) -> "LaurentPoly2":
        """Multiply by the monomial coeff * var1^e1 * var2^e2."""
        return LaurentPoly2(
            self.vars, {(a + e1, b + e2): c * coeff for (a, b), c in self.terms.items()}
        )

    def __pow__(self, k: int) -> "LaurentPoly2":
        if k < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = LaurentPoly2.one(self.vars)
        for _ in range(k):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def coeff(self, e1: int, e2: int) -> int:
        return self.terms.get((e1, e2), 0)

    def to_triples(self) -> list[list[int]]:
        return [[a, b, c] for (a, b), c in sorted(self.terms.items())]

    @classmethod
    def from_triples(
        cls, vars: tuple[str, str], triples: Iterable[Iterable[int]]
    ) -> "LaurentPoly2":
        return cls(vars, {(int(a), int(b)): int(c) for a, b, c in triples})

    def __str__(self) -> str:
        return _render(sorted(self.terms.items()), self.vars, lambda e: e)


def _render(items, names, unpack) -> str:
    if not items:
        return "0"
    parts: list[str] = []
    for key, coeff in items:
        exps = unpack(key)
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e != 0:
                factors.append(f"{name}^{e}")
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def _v_to_1(p: LaurentPoly1 | LaurentPoly2) -> LaurentPoly1:
    if isinstance(p, LaurentPoly1):
        return LaurentPoly1("z", {0: sum(p.terms.values())})
    out: dict[int, int] = {}
    for (_, ze), c in p.terms.items():
        out[ze] = out.get(ze, 0) + c
    return LaurentPoly1("z", out)


def _z2_to_t(p: LaurentPoly1) -> LaurentPoly1:
    if not isinstance(p, LaurentPoly1):
        raise ValueError("z^2 -> t substitution applies to one-variable input")
    kernel = LaurentPoly1("t", {1: 1, 0: -2, -1: 1})
    total = LaurentPoly1.zero("t")
    for e, c in p.terms.items():
        if e < 0 or e % 2:
            raise ValueError(f"z-exponent {e} is not even and nonnegative")
        total = total + (kernel ** (e // 2)) * c
    return total


def _v2_to_neg_alpha(p: LaurentPoly1 | LaurentPoly2):
    if isinstance(p, LaurentPoly1):
        out1: dict[int, int] = {}
        for e, c in p.terms.items():
            if e % 2:
                raise ValueError(f"v-exponent {e} is odd")
            j = e // 2
            out1[j] = out1.get(j, 0) + c * (-1) ** (j % 2)
        return LaurentPoly1("alpha", out1)
    out2: dict[tuple[int, int], int] = {}
    for (ve, ze), c in p.terms.items():
        if ve % 2:
            raise ValueError(f"v-exponent {ve} is odd")
        j = ve // 2
        key = (j, ze)
        out2[key] = out2.get(key, 0) + c * (-1) ** (j % 2)
    return LaurentPoly2(("alpha", "z"), out2)


_RULES = {
    "v_to_1": _v_to_1,
    "z2_to_t": _z2_to_t,
    "v2_to_neg_alpha": _v2_to_neg_alpha,
}


def specialize(p: LaurentPoly1 | LaurentPoly2, rule: str):
    """Apply a named substitution.

    * ``v_to_1``: collapse the first variable; the result lives in z.
    * ``z2_to_t``: map z^{2i} to (t - 2 + 1/t)^i; needs even nonnegative
      z-exponents.
    * ``v2_to_neg_alpha``: map v^{2j} to (-alpha)^j; needs even v-exponents.
    """
    try:
        fn = _RULES[rule]
    except KeyError:
        raise ValueError(f"unknown specialization {rule!r}") from None
    return fn(p)
