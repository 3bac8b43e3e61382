"""Graph maps in the Bestvina-Handel style and their certificates: walk
validation, transition matrices, irreducibility, Perron-Frobenius eigenvalue,
and bounded efficiency (absence of back tracks in iterated edge images).

A graph map carries an embedded graph with a distinguished set of peripheral
circles, a vertex image, and for each edge an image walk written as signed
edge tokens ("e3" forward, "-e3" reversed).  The built-in family kn_map(n)
models the pseudo-Anosov monodromy of the beta family on a graph with 2n
peripheral circles and 2n+2 real edges.

Back-track detection never expands image words.  The set of letters and the
set of adjacent letter pairs of g^m(e) satisfy an exact closed recursion, so
both are propagated as sets; a pair (x, x reversed) at level m is a back
track, and its position inside g^m(e) is recovered afterwards from recorded
parents plus a length table, again without expansion.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

__all__ = [
    "EmbeddedGraph",
    "GraphMap",
    "MapDiagnostics",
    "TransitionMatrix",
    "EfficiencyReport",
    "validate",
    "transition",
    "is_irreducible",
    "pf_eigenvalue",
    "is_efficient_up_to",
    "steps_to_reach",
    "kn_map",
    "map_to_json",
    "map_from_json",
]


def _edge_sort_key(label: str) -> tuple[str, int, str]:
    m = re.fullmatch(r"([^\d]*)(\d+)", label)
    if m:
        return (m.group(1), int(m.group(2)), label)
    return (label, -1, label)


def _parse_token(token: str) -> tuple[str, bool]:
    """Split a signed token into (edge id, reversed flag)."""
    if token.startswith("-"):
        return token[1:], True
    return token, False


@dataclass(frozen=True)
class EmbeddedGraph:
    """Finite graph with ordered edges (tail, head) and a peripheral subset."""

    vertices: tuple[str, ...]
    edges: Mapping[str, tuple[str, str]]
    peripheral: frozenset[str]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", MappingProxyType(dict(self.edges)))
        object.__setattr__(self, "peripheral", frozenset(self.peripheral))

    def valence(self, v: str) -> int:
        total = 0
        for tail, head in self.edges.values():
            total += (tail == v) + (head == v)
        return total


@dataclass(frozen=True)
class GraphMap:
    graph: EmbeddedGraph
    vertex_image: Mapping[str, str]
    edge_image: Mapping[str, tuple[str, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertex_image", MappingProxyType(dict(self.vertex_image)))
        object.__setattr__(
            self,
            "edge_image",
            MappingProxyType({e: tuple(w) for e, w in self.edge_image.items()}),
        )


@dataclass(frozen=True)
class MapDiagnostics:
    ok: bool
    issues: tuple[str, ...]
    pre_peripheral: frozenset[str]
    real: tuple[str, ...]


@dataclass(frozen=True)
class TransitionMatrix:
    """rows[i][j] = multiplicity (orientation-blind) of edge labels[i] in the
    image walk of edge labels[j]."""

    labels: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if any(len(r) != len(self.labels) for r in self.rows) or len(self.rows) != len(
            self.labels
        ):
            raise ValueError("transition matrix must be square over its labels")


@dataclass(frozen=True)
class EfficiencyReport:
    """witness = (m, edge, position): g^m(edge) reverses at that position.
    stabilized=True means the letter and pair sets reached a fixed point with
    no back track, which certifies efficiency at every order, not only up to
    the requested bound."""

    efficient: bool
    bound: int
    witness: tuple[int, str, int] | None
    stabilized: bool


def _token_endpoints(graph: EmbeddedGraph, token: str) -> tuple[str, str]:
    edge, reverse = _parse_token(token)
    tail, head = graph.edges[edge]
    return (head, tail) if reverse else (tail, head)


def validate(gm: GraphMap) -> MapDiagnostics:
    """Structural diagnostics: graph valences, peripheral circles, walk
    composability and endpoints, set-wise peripheral preservation, and the
    pre-peripheral fixed point yielding the real edge set."""
    g = gm.graph
    issues: list[str] = []

    for tail, head in g.edges.values():
        if tail not in g.vertices or head not in g.vertices:
            issues.append(f"edge endpoints missing from vertex set: ({tail}, {head})")
    for v in g.vertices:
        if g.valence(v) < 3:
            issues.append(f"vertex {v} has valence {g.valence(v)} < 3")
    unknown = g.peripheral - set(g.edges)
    if unknown:
        issues.append(f"peripheral ids missing from edge set: {sorted(unknown)}")

    # peripheral subgraph must be 2-regular, hence a disjoint union of cycles
    peripheral_valence: dict[str, int] = {}
    for p in g.peripheral & set(g.edges):
        tail, head = g.edges[p]
        peripheral_valence[tail] = peripheral_valence.get(tail, 0) + 1
        peripheral_valence[head] = peripheral_valence.get(head, 0) + 1
    for v, k in sorted(peripheral_valence.items()):
        if k != 2:
            issues.append(f"peripheral edges do not form disjoint cycles at {v}")

    for v in g.vertices:
        if gm.vertex_image.get(v) not in g.vertices:
            issues.append(f"vertex {v} has no image in the vertex set")
    for e in g.edges:
        if e not in gm.edge_image:
            issues.append(f"edge {e} has no image walk")

    for e, walk in gm.edge_image.items():
        if e not in g.edges:
            issues.append(f"image given for unknown edge {e}")
            continue
        if not walk:
            issues.append(f"edge {e} has an empty image walk")
            continue
        bad = [t for t in walk if _parse_token(t)[0] not in g.edges]
        if bad:
            issues.append(f"edge {e} image uses unknown tokens {bad}")
            continue
        pos = _token_endpoints(g, walk[0])[0]
        broken = False
        for token in walk:
            start, end = _token_endpoints(g, token)
            if start != pos:
                issues.append(f"edge {e} image walk breaks at token {token}")
                broken = True
                break
            pos = end
        if broken:
            continue
        tail, head = g.edges[e]
        want = (gm.vertex_image.get(tail), gm.vertex_image.get(head))
        got = (_token_endpoints(g, walk[0])[0], pos)
        if want != got:
            issues.append(f"edge {e} image runs {got}, expected {want}")

    # set-wise preservation of the circles, and surjectivity onto them
    hit: set[str] = set()
    for p in g.peripheral:
        walk = gm.edge_image.get(p, ())
        letters = {_parse_token(t)[0] for t in walk}
        if not letters <= g.peripheral:
            issues.append(f"peripheral edge {p} maps across non-peripheral edges")
        hit |= letters & g.peripheral
    if hit != g.peripheral:
        issues.append(f"peripheral set not covered: {sorted(g.peripheral - hit)}")

    # pre-peripheral edges: everything that eventually maps into the circles
    absorbed = set(g.peripheral)
    changed = True
    while changed:
        changed = False
        for e in g.edges:
            if e in absorbed:
                continue
            letters = {_parse_token(t)[0] for t in gm.edge_image.get(e, ())}
            if letters and letters <= absorbed:
                absorbed.add(e)
                changed = True
    pre = frozenset(absorbed - g.peripheral)
    real = tuple(sorted(set(g.edges) - absorbed, key=_edge_sort_key))
    return MapDiagnostics(ok=not issues, issues=tuple(issues), pre_peripheral=pre, real=real)


def transition(gm: GraphMap, subset: str | Sequence[str] = "real") -> TransitionMatrix:
    """Multiplicity matrix over the selected edges ("real", "all", or an
    explicit label sequence).  The map must pass validation."""
    diag = validate(gm)
    if not diag.ok:
        raise ValueError("map failed validation: " + "; ".join(diag.issues))
    if subset == "real":
        labels = diag.real
    elif subset == "all":
        labels = tuple(sorted(gm.graph.edges, key=_edge_sort_key))
    else:
        labels = tuple(subset)
        unknown = set(labels) - set(gm.graph.edges)
        if unknown:
            raise ValueError(f"unknown edges in subset: {sorted(unknown)}")
    index = {label: i for i, label in enumerate(labels)}
    rows = [[0] * len(labels) for _ in labels]
    for j, label in enumerate(labels):
        for token in gm.edge_image[label]:
            edge, _ = _parse_token(token)
            i = index.get(edge)
            if i is not None:
                rows[i][j] += 1
    return TransitionMatrix(labels=labels, rows=tuple(tuple(r) for r in rows))


def is_irreducible(M: TransitionMatrix) -> bool:
    """True iff the digraph of nonzero entries is strongly connected."""
    n = len(M.labels)
    if n == 0:
        raise ValueError("empty matrix")
    forward: list[list[int]] = [[] for _ in range(n)]
    backward: list[list[int]] = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if M.rows[i][j]:
                forward[j].append(i)
                backward[i].append(j)

    def reach(adj: list[list[int]]) -> set[int]:
        seen = {0}
        stack = [0]
        while stack:
            for nxt in adj[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    full = set(range(n))
    return reach(forward) == full and reach(backward) == full


def pf_eigenvalue(
    M: TransitionMatrix, tolerance: float = 1e-9, max_iterations: int = 500_000
) -> float:
    """Perron-Frobenius eigenvalue by power iteration on M + I (the shift
    makes an irreducible matrix primitive, so the iteration cannot oscillate
    between period classes).

    Each iterate gives the Collatz-Wielandt enclosure
    min_i (Ay)_i / y_i <= lambda(A) <= max_i (Ay)_i / y_i for y > 0, so the
    returned value is within tolerance/2 of the true eigenvalue."""
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    n = len(M.labels)
    if n == 0:
        raise ValueError("empty matrix")
    shifted = [[float(M.rows[i][j]) + (i == j) for j in range(n)] for i in range(n)]
    x = [1.0] * n
    for _ in range(max_iterations):
        y = [sum(shifted[i][j] * x[j] for j in range(n)) for i in range(n)]
        ratios = [yi / xi for yi, xi in zip(y, x)]
        low, high = min(ratios), max(ratios)
        if high - low < tolerance:
            return (low + high) / 2 - 1.0
        top = max(y)
        x = [v / top for v in y]
    raise RuntimeError(f"power iteration did not converge in {max_iterations} steps")


def _signed_images(gm: GraphMap) -> tuple[dict[str, int], list[str], dict[int, tuple[int, ...]]]:
    """Integer encoding: edge label -> positive id, plus signed image words."""
    order = sorted(gm.graph.edges, key=_edge_sort_key)
    code = {label: k + 1 for k, label in enumerate(order)}
    images: dict[int, tuple[int, ...]] = {}
    for label, walk in gm.edge_image.items():
        word = []
        for token in walk:
            edge, reverse = _parse_token(token)
            word.append(-code[edge] if reverse else code[edge])
        images[code[label]] = tuple(word)
    return code, order, images


def _image_of(images: dict[int, tuple[int, ...]], x: int) -> tuple[int, ...]:
    if x > 0:
        return images[x]
    return tuple(-t for t in reversed(images[-x]))


def is_efficient_up_to(gm: GraphMap, bound: int) -> EfficiencyReport:
    """Scan g^m(e) for every edge e and every m = 1..bound for a back track,
    an adjacent pair (x, x reversed).

    Letter sets and adjacent-pair sets of the iterated images obey

        L_{m+1}(e) = union of letters(g(x)) for x in L_m(e)
        A_{m+1}(e) = union of within-pairs(g(x)) for x in L_m(e)
                     plus {(last(g(x)), first(g(y))) : (x, y) in A_m(e)}

    so the search runs over sets of bounded size.  The pair (L_m, A_m)
    evolves deterministically, so revisiting an earlier state without having
    met a back track proves the map never develops one at any order; the
    report flags that as stabilized.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    diag = validate(gm)
    if not diag.ok:
        raise ValueError("map failed validation: " + "; ".join(diag.issues))
    _, order, images = _signed_images(gm)

    letters_of = {}
    within_of = {}
    first_of = {}
    last_of = {}
    for label_id in images:
        for x in (label_id, -label_id):
            w = _image_of(images, x)
            letters_of[x] = frozenset(w)
            within_of[x] = frozenset(zip(w, w[1:]))
            first_of[x], last_of[x] = w[0], w[-1]

    stabilized_all = True
    for e_id in sorted(images):
        L: frozenset[int] = frozenset((e_id,))
        A: frozenset[tuple[int, int]] = frozenset()
        seen = {(L, A)}
        stabilized = False
        for m in range(1, bound + 1):
            newL = frozenset().union(*(letters_of[x] for x in L))
            junction = {(last_of[x], first_of[y]) for (x, y) in A}
            newA = frozenset().union(*(within_of[x] for x in L), junction)
            bad = next((p for p in newA if p[0] == -p[1]), None)
            if bad is not None:
                label = order[e_id - 1]
                position = _witness_position(images, e_id, m, bad)
                return EfficiencyReport(False, bound, (m, label, position), False)
            L, A = newL, newA
            if (L, A) in seen:
                stabilized = True
                break
            seen.add((L, A))
        stabilized_all = stabilized_all and stabilized
    return EfficiencyReport(True, bound, None, stabilized_all)


def _witness_position(
    images: dict[int, tuple[int, ...]], e_id: int, m_fail: int, bad: tuple[int, int]
) -> int:
    """Exact offset of the back track inside g^m(e) without expanding it.

    Re-runs the propagation recording one parent per letter and per pair,
    walks the parents back to level 0, and converts the offset chain into a
    position using the length table len_k(x) = |g^k(x)|.
    """
    letter_parent: dict[tuple[int, int], tuple[int, int]] = {}
    pair_parent: dict[tuple[int, tuple[int, int]], tuple] = {}
    L: set[int] = {e_id}
    A: set[tuple[int, int]] = set()
    for m in range(1, m_fail + 1):
        newL: set[int] = set()
        newA: set[tuple[int, int]] = set()
        for x in L:
            w = _image_of(images, x)
            for i, y in enumerate(w):
                if y not in newL:
                    newL.add(y)
                    letter_parent[(m, y)] = (x, i)
                if i and (w[i - 1], y) not in newA:
                    newA.add((w[i - 1], y))
                    pair_parent[(m, (w[i - 1], y))] = ("within", x, i - 1)
        for x, y in A:
            p = (_image_of(images, x)[-1], _image_of(images, y)[0])
            if p not in newA:
                newA.add(p)
                pair_parent[(m, p)] = ("junction", (x, y))
        L, A = newL, newA
    assert bad in A

    def letter_path(x: int, level: int) -> list[tuple[int, int]]:
        if level == 0:
            assert x == e_id
            return []
        parent, offset = letter_parent[(level, x)]
        return letter_path(parent, level - 1) + [(parent, offset)]

    def pair_path(p: tuple[int, int], level: int) -> list[tuple[int, int]]:
        kind = pair_parent[(level, p)]
        if kind[0] == "within":
            _, x, i = kind
            return letter_path(x, level - 1) + [(x, i)]
        _, prev = kind
        x = prev[0]
        return pair_path(prev, level - 1) + [(x, len(_image_of(images, x)) - 1)]

    path = pair_path(bad, m_fail)  # offsets into successive expansions

    lengths: list[dict[int, int]] = [{x: 1 for x in images}]
    for _ in range(m_fail):
        prev = lengths[-1]
        lengths.append(
            {x: sum(prev[abs(t)] for t in images[x]) for x in images}
        )

    position = 0
    for t, (parent, offset) in enumerate(path, start=1):
        w = _image_of(images, parent)
        remaining = m_fail - t
        position += sum(lengths[remaining][abs(w[s])] for s in range(offset))
    return position


def steps_to_reach(gm: GraphMap, source: str, target: str, bound: int) -> int | None:
    """Smallest k <= bound with the target edge appearing (either orientation)
    in g^k(source); None if the bound is exhausted first."""
    code, _, images = _signed_images(gm)
    want = code[target]
    current = {code[source]}
    for k in range(1, bound + 1):
        current = {abs(t) for x in current for t in _image_of(images, x)}
        if want in current:
            return k
    return None


# ---------------------------------------------------------------------------
# the built-in family


def kn_map(n: int) -> GraphMap:
    """Graph map carrying the pseudo-Anosov monodromy data for the braid
    beta_n, n >= 3: two hub vertices u, w, boundary vertices b_1..b_2n with
    peripheral circles c_1..c_2n, and real edges e_1..e_{2n+2}.

    Short images: g(e_i) = e_{n+1+i} for i <= n-2, g(e_{n-1}) = e_{2n},
    g(e_{n+i}) = e_i for i <= n-1, g(e_{2n}) = e_{2n+1}, g(c_j) = c_{tau(j)}.
    The three long images (e_n, e_{2n+1}, e_{2n+2}) interleave real edges
    with the peripheral circle at each visited boundary vertex; their letter
    sequences are produced here and nowhere else, so a corrected reading of
    the underlying train-track figure means editing this function only.
    """
    if n < 3:
        raise ValueError("the built-in family needs n >= 3")

    def E(i: int) -> str:
        return f"e{i}"

    def C(j: int) -> str:
        return f"c{j}"

    def rev(t: str) -> str:
        return t[1:] if t.startswith("-") else "-" + t

    vertices = ["u", "w"] + [f"b{j}" for j in range(1, 2 * n + 1)]
    edges: dict[str, tuple[str, str]] = {}
    for i in range(1, n):
        edges[E(i)] = ("u", f"b{i}")
    for i in range(1, n + 1):
        edges[E(n + i)] = ("w", f"b{n + i}")
    edges[E(n)] = (f"b{2 * n}", f"b{n}")
    edges[E(2 * n + 1)] = ("u", f"b{n}")
    edges[E(2 * n + 2)] = (f"b{n - 1}", f"b{n - 1}")
    for j in range(1, 2 * n + 1):
        edges[C(j)] = (f"b{j}", f"b{j}")
    peripheral = frozenset(C(j) for j in range(1, 2 * n + 1))

    def tau(j: int) -> int:
        if j <= n - 2:
            return n + 1 + j
        if j == n - 1:
            return 2 * n
        if j == n:
            return n + 1
        if j < 2 * n:
            return j - n
        return n

    vertex_image = {"u": "w", "w": "u"}
    for j in range(1, 2 * n + 1):
        vertex_image[f"b{j}"] = f"b{tau(j)}"

    edge_image: dict[str, tuple[str, ...]] = {}
    for i in range(1, n - 1):
        edge_image[E(i)] = (E(n + 1 + i),)
    edge_image[E(n - 1)] = (E(2 * n),)
    for i in range(1, n):
        edge_image[E(n + i)] = (E(i),)
    edge_image[E(2 * n)] = (E(2 * n + 1),)
    for j in range(1, 2 * n + 1):
        edge_image[C(j)] = (C(tau(j)),)

    # round trip u -> b_j -> u (resp. w -> b_j -> w) hugging the circle there
    def visit(j: int) -> list[str]:
        return [E(j), C(j), rev(E(j))]

    spiral = [rev(E(2 * n + 1)), E(n - 1), C(n - 1), E(2 * n + 2), C(n - 1), rev(E(n - 1))]
    word = list(spiral)
    for j in range(n - 2, 0, -1):
        word += visit(j)
    word += [E(2 * n + 1), C(n), rev(E(n)), C(2 * n), rev(E(2 * n))]
    for j in range(2 * n - 1, n + 1, -1):
        word += visit(j)
    word += [E(2 * n), C(2 * n), rev(E(2 * n)), E(n + 1)]
    edge_image[E(n)] = tuple(word)

    word = visit(n + 1)
    for j in range(n + 2, 2 * n):
        word += visit(j)
    word += [E(2 * n), C(2 * n), E(n), C(n)]
    word += spiral
    word += [E(2 * n + 1), C(n), rev(E(n)), C(2 * n), rev(E(2 * n)), E(n + 1)]
    edge_image[E(2 * n + 1)] = tuple(word)

    word = [E(n), C(n), rev(E(n)), C(2 * n), E(n), C(n)]
    word += spiral
    word += [E(2 * n + 1), C(n), rev(E(n))]
    edge_image[E(2 * n + 2)] = tuple(word)

    gm = GraphMap(
        graph=EmbeddedGraph(tuple(vertices), edges, peripheral),
        vertex_image=vertex_image,
        edge_image=edge_image,
    )
    diag = validate(gm)
    if not diag.ok:
        raise AssertionError("built-in map failed validation: " + "; ".join(diag.issues))
    return gm


# ---------------------------------------------------------------------------
# interchange format


def map_to_json(gm: GraphMap) -> dict:
    return {
        "vertices": sorted(gm.graph.vertices),
        "edges": {e: list(gm.graph.edges[e]) for e in sorted(gm.graph.edges, key=_edge_sort_key)},
        "peripheral": sorted(gm.graph.peripheral, key=_edge_sort_key),
        "vertex_image": {v: gm.vertex_image[v] for v in sorted(gm.vertex_image)},
        "edge_image": {
            e: list(gm.edge_image[e]) for e in sorted(gm.edge_image, key=_edge_sort_key)
        },
    }


def map_from_json(data: Mapping) -> GraphMap:
    try:
        vertices = tuple(data["vertices"])
        edges = {e: (tail, head) for e, (tail, head) in data["edges"].items()}
        peripheral = frozenset(data.get("peripheral", ()))
        edge_image = {e: tuple(w) for e, w in data["edge_image"].items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed graph-map object: {exc}") from exc
    graph = EmbeddedGraph(vertices, edges, peripheral)
    vertex_image = dict(data.get("vertex_image") or {})
    if not vertex_image:
        # recover vertex images from walk endpoints
        for e, (tail, head) in edges.items():
            walk = edge_image.get(e)
            if not walk:
                continue
            start = _token_endpoints(graph, walk[0])[0]
            end = _token_endpoints(graph, walk[-1])[1]
            for v, img in ((tail, start), (head, end)):
                if vertex_image.setdefault(v, img) != img:
                    raise ValueError(f"inconsistent walk endpoints at vertex {v}")
    return GraphMap(graph=graph, vertex_image=vertex_image, edge_image=edge_image)
