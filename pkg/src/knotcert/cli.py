"""Command line front end: invariant queries, braid family emission, the
verification suites, and the persistent polynomial cache.

Every verification claim is executed under explicit budgets and reported as
one entry {claim, statement, status, computed, seconds} with status pass,
fail, skipped (budget ran out), or unknown (computed but no expected value).
Exit code 0 means no entry failed, 1 means at least one failed, 2 means the
invocation itself was unusable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .braid import (
    BraidWord,
    braid_text,
    closure_stats,
    family,
    FAMILY_NAMES,
    kn_braid,
    parse_braid,
)
from .dehornoy import DEFAULT_STEP_BUDGET, floor_exceeds_one
from .errors import BraidError, BudgetExceededError
from .homfly import (
    PolynomialCache,
    alexander,
    coefficient_polys,
    determinant,
    homfly,
    p0,
)
from .montesinos import (
    ell0_triple,
    ell_family,
    ellinf_triple,
    is_lspace_m1,
    surgery_slopes,
)
from .positivity import (
    genus_kn,
    ito_obstruction,
    sharpness,
    skein_decomposition_check,
    verify_topterm,
)
from .traintrack import (
    is_efficient_up_to,
    is_irreducible,
    kn_map,
    map_from_json,
    pf_eigenvalue,
    steps_to_reach,
    transition,
    validate,
)

Thunk = Callable[[], tuple[bool | None, object]]


@dataclass(frozen=True)
class Claim:
    claim: str
    statement: str
    thunk: Thunk


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    statement: str
    status: str
    computed: object
    seconds: float


def default_cache_path() -> Path:
    base = os.environ.get("XDG_CACHE_HOME")
    root = Path(base) if base else Path.home() / ".cache"
    return root / "knotcert" / "homfly.jsonl"


# ---------------------------------------------------------------------------
# claim execution


def _execute(claim: Claim) -> ClaimResult:
    start = time.perf_counter()
    try:
        ok, computed = claim.thunk()
        if ok is None:
            status = "unknown"
        else:
            status = "pass" if ok else "fail"
    except BudgetExceededError as exc:
        status, computed = "skipped", f"budget exceeded: {exc}"
    except Exception as exc:  # a crashed claim is a failed claim
        status, computed = "fail", f"error: {exc!r}"
    return ClaimResult(
        claim=claim.claim,
        statement=claim.statement,
        status=status,
        computed=computed,
        seconds=round(time.perf_counter() - start, 3),
    )


def _run_claims(claims: Sequence[Claim], threads: int) -> list[ClaimResult]:
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_execute, claims))
    else:
        results = [_execute(c) for c in claims]
    return sorted(results, key=lambda r: r.claim)


def _emit_report(results: list[ClaimResult], args) -> int:
    counts = {"pass": 0, "fail": 0, "skipped": 0, "unknown": 0}
    for r in results:
        counts[r.status] += 1
    if args.json:
        payload = {
            "version": __version__,
            "config": _config_echo(args),
            "entries": [r.__dict__ for r in results],
            "summary": counts,
        }
        print(json.dumps(payload, sort_keys=True, indent=2, default=str))
    else:
        for r in results:
            print(f"[{r.status:>7}] {r.claim}: {r.statement} -> {r.computed} ({r.seconds}s)")
        total = len(results)
        print(
            f"{total} claims: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['skipped']} skipped, {counts['unknown']} unknown"
        )
    return 1 if counts["fail"] else 0


def _config_echo(args) -> dict:
    keys = (
        "max_strands",
        "max_letters",
        "node_budget",
        "pf_tolerance",
        "backtrack_bound",
        "handle_budget",
        "threads",
        "level",
        "n",
        "n_max",
        "k_max",
        "genus",
    )
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


# ---------------------------------------------------------------------------
# suite builders


def _claims_topterm(n_values, node_budget, max_strands) -> list[Claim]:
    claims = []
    for n in n_values:
        sign = "+" if n % 2 == 0 else "-"
        exp = 3 * n * n + 3 * n

        def thunk(n=n):
            r = verify_topterm(n, node_budget=node_budget, max_strands=max_strands)
            return r.ok, {"exponent": r.exponent, "coefficient": r.coefficient}

        claims.append(
            Claim(
                f"topterm-n{n}",
                f"p0 of the beta_{n} closure has top term {sign}v^{exp}",
                thunk,
            )
        )
    return claims


def _claims_decomposition(n_values, node_budget, max_strands) -> list[Claim]:
    claims = []
    for n in n_values:

        def thunk(n=n):
            r = skein_decomposition_check(n, node_budget=node_budget, max_strands=max_strands)
            return r.holds, {"degree": r.lhs.degree, "terms": len(r.lhs.terms)}

        claims.append(
            Claim(
                f"decomposition-n{n}",
                f"p0 recursion over cable and kn_plus pieces holds exactly at n={n}",
                thunk,
            )
        )
    return claims


def _claims_sharpness(n_max, node_budget, max_strands) -> list[Claim]:
    jobs: list[tuple[str, str, BraidWord, bool]] = [
        ("sharpness-trefoil", "trefoil braid is sharp", BraidWord(2, (1, 1, 1)), True)
    ]
    for k in range(2, n_max + 1):
        jobs.append(
            (
                f"sharpness-cable-k{k}",
                f"cable braid X_{k}^3.[1..{k - 1}] is not sharp",
                family("cable", k),
                False,
            )
        )
    for n in range(3, n_max + 1):
        jobs.append(
            (
                f"sharpness-knplus-n{n}",
                f"kn_plus braid at n={n} is not sharp",
                family("kn_plus", n),
                False,
            )
        )
    claims = []
    for cid, statement, braid, expected in jobs:

        def thunk(braid=braid, expected=expected):
            rep = sharpness(braid, node_budget=node_budget, max_strands=max_strands)
            return rep.sharp == expected, {
                "p0_degree": rep.p0_degree,
                "bound": rep.bound,
                "sharp": rep.sharp,
            }

        claims.append(Claim(cid, statement, thunk))
    return claims


def _ito_computed(verdict) -> dict:
    z0 = {e1: c for (e1, e2), c in verdict.tilde_poly.terms.items() if e2 == 0}
    top = max(z0) if z0 else None
    return {
        "positive": verdict.positive,
        "witness": verdict.witness,
        "z0_top": None if top is None else [top, z0[top]],
        "genus_alexander_mismatch": verdict.genus_alexander_mismatch,
    }


def _claims_ito_controls(node_budget, max_strands) -> list[Claim]:
    def control(cid, statement, braid, g):
        def thunk():
            v = ito_obstruction(braid, g, max_strands=max_strands, node_budget=node_budget)
            return v.positive, _ito_computed(v)

        return Claim(cid, statement, thunk)

    return [
        control(
            "ito-control-t23",
            "obstruction stays positive on the trefoil (genus 1)",
            BraidWord(2, (1, 1, 1)),
            1,
        ),
        control(
            "ito-control-t25",
            "obstruction stays positive on the (2,5) torus knot (genus 2)",
            BraidWord(2, (1, 1, 1, 1, 1)),
            2,
        ),
    ]


def _claim_ito_kn(n, genus, node_budget, max_strands) -> Claim:
    if n % 2 == 0:
        g = genus_kn(n)

        def thunk(n=n, g=g):
            v = ito_obstruction(
                kn_braid(n), g, max_strands=max_strands, node_budget=node_budget
            )
            computed = _ito_computed(v)
            ok = (not v.positive) and computed["z0_top"] == [2 * n - 1, -1]
            return ok, computed

        return Claim(
            f"ito-kn-n{n}",
            f"obstruction fires on the beta_{n} closure with z^0 top term -alpha^{2 * n - 1}",
            thunk,
        )

    def thunk(n=n, g=genus):
        v = ito_obstruction(kn_braid(n), g, max_strands=max_strands, node_budget=node_budget)
        return None, _ito_computed(v)  # no proven expectation at odd n

    return Claim(
        f"ito-kn-n{n}",
        f"obstruction value for the beta_{n} closure at supplied genus {genus} (no asserted outcome)",
        thunk,
    )


def _claims_genus(n_values, max_strands) -> list[Claim]:
    claims = []
    for n in n_values:

        def thunk(n=n):
            d = alexander(kn_braid(n)).degree
            g = genus_kn(n)
            return 2 * d == 2 * g, {"alexander_span": 2 * d, "genus": g}

        claims.append(
            Claim(
                f"genus-n{n}",
                f"Alexander degree span of the beta_{n} closure equals twice the genus formula",
                thunk,
            )
        )
    return claims


def _claims_lspace(k_max) -> list[Claim]:
    width = max(4, len(str(k_max)))
    claims = []
    for k in range(1, k_max + 1):
        for tag, triple in (("ell0", ell0_triple(k)), ("ellinf", ellinf_triple(k))):

            def thunk(triple=triple):
                v = is_lspace_m1(*triple)
                return v.is_lspace, {
                    "triple": [str(r) for r in triple],
                    "witness": v.witness,
                }

            claims.append(
                Claim(
                    f"lspace-{tag}-k{k:0{width}d}",
                    f"Seifert triple for {tag} at k={k} passes the L-space criterion",
                    thunk,
                )
            )

    def control():
        from fractions import Fraction

        v = is_lspace_m1(Fraction(1, 2), Fraction(1, 3), Fraction(1, 7))
        return (not v.is_lspace) and v.witness == (5, 3), {"witness": v.witness}

    claims.append(
        Claim(
            "lspace-negative-control",
            "triple (1/2, 1/3, 1/7) fails the criterion with witness (5, 3)",
            control,
        )
    )
    return claims


def _claims_slopes(k_max) -> list[Claim]:
    width = max(4, len(str(k_max)))
    claims = []
    for k in range(1, k_max + 1):

        def thunk(k=k):
            fam = ell_family(k)
            sl = surgery_slopes(k)
            ok = (
                fam.det_ell == 12 * k * k + 2 * k
                and fam.det_ell0 == 6 * k + 1
                and fam.recursion_holds
                and fam.endpoints_match
                and sl.consistent
            )
            return ok, {
                "det_ell": fam.det_ell,
                "det_ell0": fam.det_ell0,
                "lspace_slope": sl.lspace_slope,
                "quotient_coeff": sl.quotient_coeff,
            }

        claims.append(
            Claim(
                f"slopes-k{k:0{width}d}",
                f"determinant recursion, endpoints, and surgery consistency hold at k={k}",
                thunk,
            )
        )

    def anchor():
        sl = surgery_slopes(1)
        return sl.lspace_slope == 14, {"lspace_slope": sl.lspace_slope}

    claims.append(
        Claim(
            "slopes-anchor-k1",
            "the L-space surgery slope at k=1 is 14",
            anchor,
        )
    )
    return claims


def _certify_family_map(n, pf_tolerance, backtrack_bound):
    gm = kn_map(n)
    diag = validate(gm)
    M = transition(gm)
    irreducible = is_irreducible(M)
    lam = pf_eigenvalue(M, pf_tolerance)
    bound = backtrack_bound if backtrack_bound else 2 * (2 * n + 2)
    eff = is_efficient_up_to(gm, bound)
    en = f"e{n}"
    covers = {t.lstrip("-") for t in gm.edge_image[en]} >= set(diag.real)
    reach = [steps_to_reach(gm, e, en, 2 * n + 2) for e in diag.real]
    reach_ok = all(r is not None for r in reach)
    ok = (
        diag.ok
        and irreducible
        and lam > 1 + 1e-6
        and eff.efficient
        and covers
        and reach_ok
    )
    return ok, {
        "real_edges": len(diag.real),
        "irreducible": irreducible,
        "lambda": round(lam, 9),
        "efficient": eff.efficient,
        "efficiency_bound": bound,
        "stabilized": eff.stabilized,
        "witness": eff.witness,
        "en_covers_all_real": covers,
        "max_steps_to_en": max((r for r in reach if r is not None), default=None),
    }


def _claims_traintrack(n_values, pf_tolerance, backtrack_bound) -> list[Claim]:
    claims = []
    for n in n_values:

        def thunk(n=n):
            return _certify_family_map(n, pf_tolerance, backtrack_bound)

        claims.append(
            Claim(
                f"traintrack-n{n}",
                f"graph map at n={n} is efficient with irreducible real block and dilatation > 1",
                thunk,
            )
        )
    return claims


def _claims_traintrack_file(path, pf_tolerance, backtrack_bound) -> list[Claim]:
    def load():
        with open(path) as fh:
            return map_from_json(json.load(fh))

    def v_thunk():
        diag = validate(load())
        return diag.ok, {
            "issues": list(diag.issues),
            "real": list(diag.real),
            "pre_peripheral": sorted(diag.pre_peripheral),
        }

    def m_thunk():
        gm = load()
        M = transition(gm)
        irr = is_irreducible(M)
        lam = pf_eigenvalue(M, pf_tolerance)
        return irr, {"labels": list(M.labels), "irreducible": irr, "lambda": round(lam, 9)}

    def e_thunk():
        gm = load()
        bound = backtrack_bound if backtrack_bound else 2 * len(gm.graph.edges)
        rep = is_efficient_up_to(gm, bound)
        return rep.efficient, {
            "bound": rep.bound,
            "stabilized": rep.stabilized,
            "witness": rep.witness,
        }

    name = Path(path).name
    return [
        Claim(f"usermap-validate-{name}", f"{name}: structural validation", v_thunk),
        Claim(f"usermap-transition-{name}", f"{name}: irreducibility and dilatation", m_thunk),
        Claim(f"usermap-efficiency-{name}", f"{name}: no back track within bound", e_thunk),
    ]


def _claims_dehornoy(n_values, handle_budget) -> list[Claim]:
    claims = []
    for n in n_values:

        def thunk(n=n):
            cert = floor_exceeds_one(n, handle_budget)
            return cert.holds and cert.main_index == 1, {
                "steps": cert.steps,
                "witness_letters": len(cert.witness.letters),
                "main_index": cert.main_index,
            }

        claims.append(
            Claim(
                f"dehornoy-n{n}",
                f"full twist to the fourth precedes the conjugated braid at n={n} (sigma_1-positive quotient)",
                thunk,
            )
        )
    return claims


# ---------------------------------------------------------------------------
# subcommand handlers


def _resolved_node_budget(args, fallback: int) -> int:
    return args.node_budget if args.node_budget else fallback


def _cmd_verify(args) -> int:
    target = args.target
    node_budget = _resolved_node_budget(args, 5_000_000)
    claims: list[Claim] = []
    if target == "topterm":
        claims = _claims_topterm([args.n], node_budget, args.max_strands)
    elif target == "decomposition":
        claims = _claims_decomposition(
            range(2, args.n_max + 1), node_budget, args.max_strands
        )
    elif target == "sharpness":
        claims = _claims_sharpness(args.n_max, node_budget, args.max_strands)
    elif target == "ito":
        claims = _claims_ito_controls(node_budget, args.max_strands)
        claims.append(_claim_ito_kn(args.n, args.genus, node_budget, args.max_strands))
    elif target == "genus":
        claims = _claims_genus([args.n], args.max_strands)
    elif target == "lspace":
        claims = _claims_lspace(args.k_max)
    elif target == "slopes":
        claims = _claims_slopes(args.k_max)
    elif target == "traintrack":
        if args.map:
            claims = _claims_traintrack_file(args.map, args.pf_tolerance, args.backtrack_bound)
        else:
            claims = _claims_traintrack(
                range(3, args.n_max + 1), args.pf_tolerance, args.backtrack_bound
            )
    elif target == "dehornoy":
        claims = _claims_dehornoy(range(2, args.n_max + 1), args.handle_budget)
    elif target == "all":
        full = args.level == "full"
        top_ns = [2, 3, 4] if full else [2, 3]
        dec_ns = [2, 3, 4] if full else [2, 3]
        sharp_max = 4 if full else 3
        ito_ns = [2, 4] if full else [2]
        k_max = 500 if full else 50
        claims += _claims_topterm(top_ns, node_budget, args.max_strands)
        claims += _claims_decomposition(dec_ns, node_budget, args.max_strands)
        claims += _claims_sharpness(sharp_max, node_budget, args.max_strands)
        claims += _claims_ito_controls(node_budget, args.max_strands)
        for n in ito_ns:
            claims.append(_claim_ito_kn(n, None, node_budget, args.max_strands))
        claims += _claims_genus(ito_ns, args.max_strands)
        claims += _claims_lspace(k_max)
        claims += _claims_slopes(k_max)
        claims += _claims_traintrack(range(3, 9), args.pf_tolerance, args.backtrack_bound)
        claims += _claims_dehornoy(range(2, 6), args.handle_budget)
    results = _run_claims(claims, args.threads)
    return _emit_report(results, args)


def _parse_cli_braid(args, parser) -> BraidWord:
    try:
        b = parse_braid(args.braid, strands=args.strands)
    except BraidError as exc:
        parser.error(str(exc))
    if b.crossings > args.max_letters:
        parser.error(
            f"braid has {b.crossings} letters, over the --max-letters budget {args.max_letters}"
        )
    if b.strands > args.max_strands:
        parser.error(
            f"braid has {b.strands} strands, over the --max-strands budget {args.max_strands}"
        )
    return b


def _invariants_payload(b: BraidWord, args) -> dict:
    stats = closure_stats(b)
    cache = None if args.no_cache else PolynomialCache(default_cache_path())
    node_budget = _resolved_node_budget(args, 200_000)
    P = homfly(
        b,
        engine=args.engine,
        max_strands=args.max_strands,
        node_budget=node_budget,
        cache=cache,
    )
    dec = coefficient_polys(P, stats.components)
    payload = {
        "braid": braid_text(b),
        "strands": b.strands,
        "letters": b.crossings,
        "writhe": stats.writhe,
        "components": stats.components,
        "homfly": str(P),
        "coefficients": {f"p{i}": str(q) for i, q in enumerate(dec.coeffs)},
    }
    if stats.components == 1:
        payload["alexander"] = str(alexander(b))
        payload["determinant"] = determinant(b)
    return payload


def _cmd_invariants(args, parser) -> int:
    b = _parse_cli_braid(args, parser)
    try:
        payload = _invariants_payload(b, args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 1
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for key, value in payload.items():
            if isinstance(value, dict):
                for k2, v2 in value.items():
                    print(f"{key}.{k2}: {v2}")
            else:
                print(f"{key}: {value}")
    return 0


def _cmd_family(args, parser) -> int:
    try:
        b = family(args.name, args.n)
    except (BraidError, ValueError) as exc:
        parser.error(str(exc))
    if args.emit == "word":
        print(braid_text(b))
        return 0
    try:
        payload = _invariants_payload(b, args)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(payload, sort_keys=True, indent=2) if args.json else payload)
    return 0


def _cmd_cache(args) -> int:
    cache_path = default_cache_path()
    if args.action == "path":
        print(cache_path)
        return 0
    cache = PolynomialCache(cache_path)
    if args.action == "stats":
        print(json.dumps(cache.stats(), sort_keys=True))
        return 0
    cache.clear()
    print(f"cleared {cache_path}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-strands", type=int, default=8, help="Hecke engine strand cap")
    p.add_argument("--max-letters", type=int, default=80, help="input word length cap")
    p.add_argument("--node-budget", type=int, default=None, help="skein recursion node cap")
    p.add_argument("--pf-tolerance", type=float, default=1e-9, help="eigenvalue tolerance")
    p.add_argument(
        "--backtrack-bound",
        type=int,
        default=None,
        help="efficiency iteration bound (default 2 * edge count)",
    )
    p.add_argument(
        "--handle-budget", type=int, default=DEFAULT_STEP_BUDGET, help="handle reduction cap"
    )
    p.add_argument("--threads", type=int, default=1, help="worker threads for claim sweeps")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="knotcert",
        description="Braid, polynomial, and graph-map certificates for a family of knots.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants", help="invariants of one braid closure")
    p_inv.add_argument("--braid", required=True, help='letters, e.g. "1 1 1" or "strands=3 1 -2"')
    p_inv.add_argument("--strands", type=int, default=None)
    p_inv.add_argument("--engine", choices=("hecke", "skein"), default="hecke")
    p_inv.add_argument("--no-cache", action="store_true", help="skip the persistent cache")
    _add_budget_flags(p_inv)

    p_fam = sub.add_parser("family", help="emit a built-in braid word or its invariants")
    p_fam.add_argument("name", choices=tuple(n.replace("_", "-") for n in FAMILY_NAMES))
    p_fam.add_argument("--n", type=int, required=True)
    p_fam.add_argument("--emit", choices=("word", "invariants"), default="word")
    p_fam.add_argument("--engine", choices=("hecke", "skein"), default="hecke")
    p_fam.add_argument("--no-cache", action="store_true")
    _add_budget_flags(p_fam)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    ver_sub = p_ver.add_subparsers(dest="target", required=True)
    targets = {
        "topterm": "top term of p0 for one beta braid",
        "decomposition": "p0 recursion for n = 2..n-max",
        "sharpness": "sharpness suite up to n-max",
        "ito": "braid-positivity obstruction controls and one beta braid",
        "genus": "Alexander span against the genus formula",
        "lspace": "L-space criterion sweep over k",
        "slopes": "determinant and surgery arithmetic sweep over k",
        "traintrack": "graph-map certificates for n = 3..n-max or a JSON map",
        "dehornoy": "Dehornoy floor certificates for n = 2..n-max",
        "all": "every suite at the chosen level",
    }
    for name, help_text in targets.items():
        q = ver_sub.add_parser(name, help=help_text)
        if name == "topterm":
            q.add_argument("--n", type=int, default=2)
        elif name in ("decomposition", "sharpness"):
            q.add_argument("--n-max", type=int, default=3)
        elif name == "ito":
            q.add_argument("--n", type=int, default=2)
            q.add_argument("--genus", type=int, default=None, help="required for odd --n")
        elif name == "genus":
            q.add_argument("--n", type=int, default=2)
        elif name in ("lspace", "slopes"):
            q.add_argument("--k-max", type=int, default=50)
        elif name == "traintrack":
            q.add_argument("--n-max", type=int, default=8)
            q.add_argument("--map", default=None, help="certify a JSON graph map instead")
        elif name == "dehornoy":
            q.add_argument("--n-max", type=int, default=5)
        elif name == "all":
            q.add_argument("--level", choices=("desk", "full"), default="desk")
        _add_budget_flags(q)

    p_cache = sub.add_parser("cache", help="persistent polynomial cache utilities")
    p_cache.add_argument("action", choices=("path", "stats", "clear"))

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        if args.target == "ito" and args.n % 2 == 1 and args.genus is None:
            parser.error("odd --n has no genus formula; supply --genus explicitly")
        if args.target == "genus" and args.n % 2 == 1:
            parser.error("the genus formula is available for even --n only")
        if args.target == "topterm" and args.n < 2:
            parser.error("--n must be at least 2")
        return _cmd_verify(args)
    if args.command == "invariants":
        return _cmd_invariants(args, parser)
    if args.command == "family":
        return _cmd_family(args, parser)
    if args.command == "cache":
        return _cmd_cache(args)
    parser.error(f"unknown command {args.command!r}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
