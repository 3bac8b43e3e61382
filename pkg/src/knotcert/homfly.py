"""HOMFLY polynomials of closed braids, by two independent engines.

Conventions.  P(v, z) obeys the skein relation

    v^-1 P(L+) - v P(L-) = z P(L0),    P(unknot) = 1,

so the c-component unlink has P = delta^(c-1) with delta = (v^-1 - v) z^-1.
Every coefficient is an exact integer; polynomials are returned as
:class:`~knotcert.poly.LaurentPoly2` in (v, z).

Engines:

* Hecke trace (Morton-Short style).  The braid group maps into the Hecke
  algebra by sigma_k -> v T_k with T_k^2 = z T_k + 1; the closure value is a
  Markov trace evaluated by strand-by-strand reduction over the permutation
  basis.  Polynomial cost in word length at fixed strand count; this is the
  primary engine.
* Descending-walk skein resolver.  Walks the closure once per component and
  forces every crossing to be crossed over on first visit, branching into a
  smoothed word at each violation; descending diagrams are unlinks.  Used as
  an independent oracle and, specialized to the zeroth coefficient
  polynomial, as the fast path of :func:`p0`.

The zeroth coefficient polynomial p^0 is the i = 0 entry of the expansion
P = (v^-1 z)^(1 - c) * sum_i p^i(v) z^(2i).  Its dedicated skein rules need
the crossing type: a self-crossing (both strands on one component) smooths
with a branch, a mixed crossing only rescales:

    self:   p0(L+) = v^2 p0(L-) + v^2 p0(L0),   p0(L-) = v^-2 p0(L+) - p0(L0)
    mixed:  p0(L+) = v^2 p0(L-)
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .braid import BraidWord, braid_text, closure_stats, component_table
from .errors import BudgetExceededError
from .poly import LaurentPoly1, LaurentPoly2, specialize

__all__ = [
    "CoefficientDecomposition",
    "homfly",
    "hecke_homfly",
    "skein_homfly",
    "coefficient_polys",
    "p0",
    "alexander",
    "determinant",
    "canonical_key",
    "PolynomialCache",
]

_DELTA = {(-1, -1): 1, (1, -1): -1}


# --------------------------------------------------------------------------
# raw sparse-dict arithmetic (hot paths avoid dataclass churn)


def _add_into(dst: dict, src: dict, de1: int = 0, de2: int | None = None, scale: int = 1) -> None:
    if de2 is None:
        for e, c in src.items():
            k = e + de1
            dst[k] = dst.get(k, 0) + c * scale
            if not dst[k]:
                del dst[k]
    else:
        for (a, b), c in src.items():
            k = (a + de1, b + de2)
            dst[k] = dst.get(k, 0) + c * scale
            if not dst[k]:
                del dst[k]


def _mul1(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            k = e1 + e2
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _mul2(a: dict, b: dict) -> dict:
    out: dict = {}
    for (a1, b1), c1 in a.items():
        for (a2, b2), c2 in b.items():
            k = (a1 + a2, b1 + b2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _pow1(base: dict, k: int) -> dict:
    out = {0: 1}
    for _ in range(k):
        out = _mul1(out, base)
    return out


def _pow2(base: dict, k: int) -> dict:
    out = {(0, 0): 1}
    for _ in range(k):
        out = _mul2(out, base)
    return out


# --------------------------------------------------------------------------
# Hecke trace engine


def _hecke_mul_sigma(state: dict, k: int, positive: bool) -> dict:
    """Right-multiply every basis term by the image of sigma_k^{+-1}.

    Basis words are one-line permutation tuples; T_w T_k = T_{w s_k} on an
    ascent at k and z T_w + T_{w s_k} on a descent.
    """
    i = k - 1
    nxt: dict = {}
    for w, poly in state.items():
        ws = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
        if positive:
            _add_into(nxt.setdefault(ws, {}), poly, 1, 0)
            if w[i] > w[i + 1]:
                _add_into(nxt.setdefault(w, {}), poly, 1, 1)
        else:
            _add_into(nxt.setdefault(ws, {}), poly, -1, 0)
            if w[i] < w[i + 1]:
                _add_into(nxt.setdefault(w, {}), poly, -1, 1, -1)
    return {w: p for w, p in nxt.items() if p}


def _hecke_mul_T(state: dict, k: int) -> dict:
    i = k - 1
    nxt: dict = {}
    for w, poly in state.items():
        ws = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
        _add_into(nxt.setdefault(ws, {}), poly, 0, 0)
        if w[i] > w[i + 1]:
            _add_into(nxt.setdefault(w, {}), poly, 0, 1)
    return {w: p for w, p in nxt.items() if p}


def _markov_close(state: dict, strands: int) -> dict:
    """Evaluate the Markov trace by closing strands from the top down.

    A basis word fixing the top strand restricts with a free-loop factor
    delta; otherwise deleting the top value costs v^-1 and leaves a product
    T_u T_{m-2} ... T_p to re-expand in the basis one strand lower.
    """
    for m in range(strands, 1, -1):
        nxt: dict = {}
        for w, poly in state.items():
            if w[m - 1] == m:
                u = w[:m - 1]
                _add_into(nxt.setdefault(u, {}), _mul2(poly, _DELTA), 0, 0)
            else:
                p = w.index(m) + 1
                u = tuple(x for x in w if x != m)
                tmp = {u: {(a - 1, b): c for (a, b), c in poly.items()}}
                for k in range(m - 2, p - 1, -1):
                    tmp = _hecke_mul_T(tmp, k)
                for wu, pu in tmp.items():
                    _add_into(nxt.setdefault(wu, {}), pu, 0, 0)
        state = {w: p for w, p in nxt.items() if p}
    return state.get((1,), {})


def hecke_homfly(b: BraidWord, *, max_strands: int = 8) -> LaurentPoly2:
    """HOMFLY polynomial of the closure via the Hecke-algebra Markov trace."""
    if b.strands > max_strands:
        raise BudgetExceededError(
            f"{b.strands} strands exceeds the Hecke budget of {max_strands}"
        )
    state = {tuple(range(1, b.strands + 1)): {(0, 0): 1}}
    for letter in b.letters:
        state = _hecke_mul_sigma(state, abs(letter), letter > 0)
    return LaurentPoly2(("v", "z"), _markov_close(state, b.strands))


# --------------------------------------------------------------------------
# descending-walk skein engines


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, nodes: int) -> None:
        self.remaining = nodes

    def spend(self) -> None:
        if self.remaining <= 0:
            raise BudgetExceededError("skein node budget exhausted", spent=0)
        self.remaining -= 1


def _canonical_rotation(letters: tuple[int, ...]) -> tuple[int, ...]:
    if not letters:
        return letters
    return min(letters[i:] + letters[:i] for i in range(len(letters)))


def _simplify(word: tuple[int, ...], strands: int) -> tuple[tuple[int, ...], int]:
    """Closure-preserving reductions: free and cyclic cancellation plus
    destabilization of a generator that occurs exactly once at either end of
    the strand range."""
    w = list(word)
    changed = True
    while changed:
        changed = False
        out: list[int] = []
        for x in w:
            if out and out[-1] == -x:
                out.pop()
                changed = True
            else:
                out.append(x)
        while len(out) >= 2 and out[0] == -out[-1]:
            out = out[1:-1]
            changed = True
        w = out
        if strands >= 2:
            top = [i for i, x in enumerate(w) if abs(x) == strands - 1]
            if len(top) == 1:
                del w[top[0]]
                strands -= 1
                changed = True
                continue
            low = [i for i, x in enumerate(w) if abs(x) == 1]
            if len(low) == 1:
                del w[low[0]]
                w = [x - 1 if x > 0 else x + 1 for x in w]
                strands -= 1
                changed = True
    return tuple(w), strands


def _find_split(word: tuple[int, ...], strands: int) -> int | None:
    used = {abs(x) for x in word}
    for k in range(1, strands):
        if k not in used:
            return k
    return None


def _split_words(word, strands, k):
    left = tuple(x for x in word if abs(x) < k)
    right = tuple((abs(x) - k) * (1 if x > 0 else -1) for x in word if abs(x) > k)
    return (left, k), (right, strands - k)


def _walk_passes(word: tuple[int, ...], strands: int):
    """Traversal of the closure: per component (ordered by smallest start
    position), the sequence of (letter index, enters-left) crossing passes."""
    b = BraidWord(strands, word)
    stats = closure_stats(b)
    table = component_table(b)
    passes: list[tuple[int, bool]] = []
    for comp in range(1, stats.components + 1):
        start = stats.component_map.index(comp) + 1
        p = start
        while True:
            for t, letter in enumerate(word):
                k = abs(letter)
                if p == k:
                    passes.append((t, True))
                    p = k + 1
                elif p == k + 1:
                    passes.append((t, False))
                    p = k
            if p == start:
                break
    return passes, table, stats.components


_P0_MEMO: dict = {}
_HOMFLY_WALK_MEMO: dict = {}
_MEMO_LOCK = threading.Lock()

_P0_SPLIT = {-2: 1, 0: -1}  # v^-2 - 1


def _p0_solve(word: tuple[int, ...], strands: int, budget: _Budget) -> dict:
    word, strands = _simplify(word, strands)
    if not word:
        return _pow1(_P0_SPLIT, strands - 1)
    k = _find_split(word, strands)
    if k is not None:
        (lw, ls), (rw, rs) = _split_words(word, strands, k)
        prod = _mul1(_p0_solve(lw, ls, budget), _p0_solve(rw, rs, budget))
        return _mul1(prod, _P0_SPLIT)
    key = (strands, _canonical_rotation(word))
    with _MEMO_LOCK:
        hit = _P0_MEMO.get(key)
    if hit is not None:
        return dict(hit)
    budget.spend()
    passes, table, ncomps = _walk_passes(word, strands)
    cur = list(word)
    seen: set[int] = set()
    factor = {0: 1}
    total: dict = {}
    for t, enters_left in passes:
        if t in seen:
            continue
        seen.add(t)
        positive = cur[t] > 0
        if (positive and enters_left) or (not positive and not enters_left):
            continue  # already crossed over on first visit
        g = abs(cur[t])
        self_crossing = table[t][g - 1] == table[t][g]
        if self_crossing:
            sub = _p0_solve(tuple(cur[:t] + cur[t + 1:]), strands, budget)
            contrib = _mul1(factor, sub)
            _add_into(total, contrib, 2 if positive else 0, scale=1 if positive else -1)
        factor = {e + (2 if positive else -2): c for e, c in factor.items()}
        cur[t] = -cur[t]
    _add_into(total, _mul1(factor, _pow1(_P0_SPLIT, ncomps - 1)))
    with _MEMO_LOCK:
        _P0_MEMO[key] = dict(total)
    return total


def _homfly_solve(word: tuple[int, ...], strands: int, budget: _Budget) -> dict:
    word, strands = _simplify(word, strands)
    if not word:
        return _pow2(_DELTA, strands - 1)
    k = _find_split(word, strands)
    if k is not None:
        (lw, ls), (rw, rs) = _split_words(word, strands, k)
        prod = _mul2(_homfly_solve(lw, ls, budget), _homfly_solve(rw, rs, budget))
        return _mul2(prod, _DELTA)
    key = (strands, _canonical_rotation(word))
    with _MEMO_LOCK:
        hit = _HOMFLY_WALK_MEMO.get(key)
    if hit is not None:
        return dict(hit)
    budget.spend()
    passes, _table, ncomps = _walk_passes(word, strands)
    cur = list(word)
    seen: set[int] = set()
    factor = {(0, 0): 1}
    total: dict = {}
    for t, enters_left in passes:
        if t in seen:
            continue
        seen.add(t)
        positive = cur[t] > 0
        if (positive and enters_left) or (not positive and not enters_left):
            continue
        sub = _homfly_solve(tuple(cur[:t] + cur[t + 1:]), strands, budget)
        contrib = _mul2(factor, sub)
        if positive:
            _add_into(total, contrib, 1, 1)
            factor = {(a + 2, b): c for (a, b), c in factor.items()}
        else:
            _add_into(total, contrib, -1, 1, -1)
            factor = {(a - 2, b): c for (a, b), c in factor.items()}
        cur[t] = -cur[t]
    _add_into(total, _mul2(factor, _pow2(_DELTA, ncomps - 1)), 0, 0)
    with _MEMO_LOCK:
        _HOMFLY_WALK_MEMO[key] = dict(total)
    return total


def skein_homfly(b: BraidWord, *, node_budget: int = 200_000) -> LaurentPoly2:
    """HOMFLY polynomial via the descending-walk skein resolver.

    Independent of the Hecke engine; exponential in the worst case, bounded
    by ``node_budget`` resolver nodes.
    """
    budget = _Budget(node_budget)
    return LaurentPoly2(("v", "z"), _homfly_solve(b.letters, b.strands, budget))


# --------------------------------------------------------------------------
# public API


def canonical_key(b: BraidWord) -> str:
    """Canonical cache key: the braid text of the lexicographically least
    cyclic rotation (closures are invariant under rotation)."""
    return braid_text(BraidWord(b.strands, _canonical_rotation(b.letters)))


_HOMFLY_MEMO: dict = {}


def homfly(
    b: BraidWord,
    *,
    engine: str = "hecke",
    max_strands: int = 8,
    node_budget: int = 200_000,
    cache: "PolynomialCache | None" = None,
) -> LaurentPoly2:
    """HOMFLY polynomial of the closure of ``b``.

    ``engine`` selects "hecke" (primary) or "skein" (oracle).  Results are
    memoized per engine under the canonical rotation key; ``cache``, when
    given, persists Hecke results across processes.
    """
    if engine not in ("hecke", "skein"):
        raise ValueError(f"unknown engine {engine!r}")
    key = (engine, canonical_key(b))
    with _MEMO_LOCK:
        hit = _HOMFLY_MEMO.get(key)
    if hit is not None:
        return hit
    if cache is not None and engine == "hecke":
        cached = cache.get(key[1])
        if cached is not None:
            with _MEMO_LOCK:
                _HOMFLY_MEMO[key] = cached
            return cached
    if engine == "hecke":
        result = hecke_homfly(b, max_strands=max_strands)
    else:
        result = skein_homfly(b, node_budget=node_budget)
    with _MEMO_LOCK:
        _HOMFLY_MEMO[key] = result
    if cache is not None and engine == "hecke":
        cache.put(key[1], b.strands, result, algorithm="hecke")
    return result


@dataclass(frozen=True)
class CoefficientDecomposition:
    """The coefficient polynomials p^i of P = (v^-1 z)^(1-c) sum p^i z^(2i)."""

    components: int
    coeffs: tuple[LaurentPoly1, ...]

    def reassemble(self) -> LaurentPoly2:
        total = LaurentPoly2.zero(("v", "z"))
        for i, p in enumerate(self.coeffs):
            for e, c in p.terms.items():
                total = total + LaurentPoly2.monomial(("v", "z"), e, 2 * i, c)
        return total.shift(self.components - 1, 1 - self.components)


def coefficient_polys(P: LaurentPoly2, components: int) -> CoefficientDecomposition:
    """Split a HOMFLY polynomial of a ``components``-component closure into
    its coefficient polynomials; raises when the expansion shape fails."""
    if components < 1:
        raise ValueError("component count must be positive")
    shifted = P.shift(-(components - 1), components - 1)
    rows: dict[int, dict[int, int]] = {}
    for (ve, ze), c in shifted.terms.items():
        if ze < 0 or ze % 2:
            raise ValueError(
                f"decomposition shape mismatch at z-exponent {ze}: "
                f"wrong component count or corrupted polynomial"
            )
        rows.setdefault(ze // 2, {})[ve] = c
    top = max(rows) if rows else -1
    coeffs = tuple(LaurentPoly1("v", rows.get(i, {})) for i in range(top + 1))
    return CoefficientDecomposition(components=components, coeffs=coeffs)


def p0(
    b: BraidWord,
    *,
    node_budget: int = 60_000,
    fallback: bool = True,
    max_strands: int = 8,
) -> LaurentPoly1:
    """Zeroth coefficient polynomial of the closure.

    Tries the dedicated skein fast path first; on budget exhaustion falls
    back to extracting p^0 from the full Hecke HOMFLY polynomial.
    """
    try:
        budget = _Budget(node_budget)
        return LaurentPoly1("v", _p0_solve(b.letters, b.strands, budget))
    except BudgetExceededError:
        if not fallback:
            raise
    P = homfly(b, max_strands=max_strands)
    comps = closure_stats(b).components
    return coefficient_polys(P, comps).coeffs[0]


def alexander(b: BraidWord) -> LaurentPoly1:
    """Alexander polynomial of a knot closure, symmetric with value 1 at 1."""
    stats = closure_stats(b)
    if stats.components != 1:
        raise ValueError(f"closure has {stats.components} components, not a knot")
    P = homfly(b)
    a = specialize(specialize(P, "v_to_1"), "z2_to_t")
    if any(a.coeff(-e) != c for e, c in a.terms.items()) or a.evaluate(1) != 1:
        raise AssertionError("Alexander normalization violated; engine bug")
    return a


def determinant(b: BraidWord) -> int:
    """Knot determinant |Delta(-1)|."""
    value = alexander(b).evaluate(Fraction(-1))
    assert value.denominator == 1
    return abs(int(value))


# --------------------------------------------------------------------------
# persistent cache


class PolynomialCache:
    """Append-only JSON-lines store of computed HOMFLY polynomials.

    Advisory only: a missing or corrupt record merely forces recomputation.
    Record fields: word (canonical braid text), strands, tags, terms
    (sorted [v_exp, z_exp, coeff] triples), alg, version.
    """

    VERSION = 1

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        self._memory: dict[str, LaurentPoly2] = {}
        self._lock = threading.Lock()
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        for line in self.path.read_text().splitlines():
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
                poly = LaurentPoly2.from_triples(tuple(rec["tags"]), rec["terms"])
                self._memory[rec["word"]] = poly
            except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                continue  # advisory cache: skip damage silently

    def get(self, key: str) -> LaurentPoly2 | None:
        with self._lock:
            return self._memory.get(key)

    def put(self, key: str, strands: int, poly: LaurentPoly2, algorithm: str) -> None:
        with self._lock:
            if key in self._memory:
                return
            self._memory[key] = poly
            record = {
                "word": key,
                "strands": strands,
                "tags": list(poly.vars),
                "terms": poly.to_triples(),
                "alg": algorithm,
                "version": self.VERSION,
            }
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                fh.write(json.dumps(record, sort_keys=True) + "\n")

    def stats(self) -> dict:
        with self._lock:
            size = self.path.stat().st_size if self.path.exists() else 0
            return {"path": str(self.path), "records": len(self._memory), "bytes": size}

    def clear(self) -> None:
        with self._lock:
            self._memory.clear()
            if self.path.exists():
                self.path.unlink()
