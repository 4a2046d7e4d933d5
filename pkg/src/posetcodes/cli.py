"""Command-line entry point: ``posetcodes <object> <verb> [flags]``.

Output is JSON unless ``--format table`` is given.  Exit codes: 0 success,
1 a requested check came out negative, 2 bad input, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

import numpy as np

from . import anticode as ac
from . import codes as cd
from .algebra import DEFAULT_BUDGET, parse_field, vector_array
from .errors import BudgetExceeded, ContractError, DomainError, PosetCodesError, ValidationError
from .metric import MetricSpace, poset_weights
from .oracle import CLIQUE_BUDGET, brute_a_star, brute_ball_size
from .poset import Poset, load_poset
from .verify import Context, SweepConfig, check_equality_hunt, run_verification_suite
from .weights import load_weight, validate_weight, weight_stats

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


# -- argument helpers ---------------------------------------------------------------

def _vector(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t != ""]
    except ValueError as exc:
        raise ValidationError(f"cannot parse vector {text!r}; expected e.g. 1,0,2") from exc


def _common(p: argparse.ArgumentParser, n: bool = True, D: bool = False) -> None:
    p.add_argument("--q", required=True, help="field order or 'q=p^k'")
    if n:
        p.add_argument("--n", type=int, required=True, help="dimension")
    p.add_argument("--weight", default="hamming", help="hamming, lee, or a JSON weight file")
    if n:
        p.add_argument("--poset", default="chain", help="chain, antichain, or a JSON poset file")
    if D:
        p.add_argument("--D", type=int, required=True, help="radius / diameter")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")
    p.add_argument("--format", choices=("json", "table"), default="json")


def _weight(args):
    return load_weight(parse_field(args.q), args.weight)


def _space(args) -> MetricSpace:
    w = _weight(args)
    w.require_valid()
    if args.n < 1:
        raise ValidationError(f"dimension must be >= 1, got {args.n}")
    P = load_poset(args.poset, args.n)
    return MetricSpace(w.spec, args.n, P, w)


class _Relabel:
    """Maps a chain with arbitrary labels onto the usual chain 1 < 2 < ... < n."""

    def __init__(self, P: Poset):
        self.order = [i - 1 for i in P.chain_order()]

    def to_usual(self, v: Sequence[int]) -> list[int]:
        return [int(v[i]) for i in self.order]

    def from_usual(self, v: Sequence[int]) -> list[int]:
        out = [0] * len(v)
        for pos, i in enumerate(self.order):
            out[i] = int(v[pos])
        return out


def _chain_space(args) -> tuple[MetricSpace, _Relabel]:
    M = _space(args)
    if not M.poset.is_chain:
        raise DomainError("this command needs a chain poset")
    return MetricSpace.chain(M.weight, M.n), _Relabel(M.poset)


def _load_set(text: str) -> list[list[int]]:
    path = Path(text)
    if path.exists():
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ValidationError(f"cannot read {path}: {exc}") from exc
        if isinstance(data, dict):
            data = data.get("words", data.get("set"))
    else:
        data = [_vector(t) for t in text.split(";") if t.strip()]
    if not isinstance(data, list) or not all(isinstance(v, list) for v in data):
        raise ValidationError("a vector set must be a list of integer lists")
    return data


def _sorted_vectors(vs) -> list[list[int]]:
    return sorted((list(v) for v in vs), key=lambda v: tuple(reversed(v)))


# -- handlers -------------------------------------------------------------------------

def cmd_weight_stats(args):
    w = _weight(args)
    w.require_valid()
    return {"q": w.spec.q, "weight": list(w.values), **weight_stats(w).to_dict()}, EXIT_OK


def cmd_weight_validate(args):
    w = _weight(args)
    violations = validate_weight(w)
    out = {"q": w.spec.q, "weight": list(w.values), "valid": not violations,
           "violations": [{"axiom": v.axiom, "witness": list(v.witness)} for v in violations]}
    return out, EXIT_OK if not violations else EXIT_CHECK


def cmd_ball_size(args):
    M = _space(args)
    if M.poset.is_chain:
        w, n = M.weight, M.n
        d = ac.normalize_radius(w, n, args.D)
        out = {"q": M.q, "n": n, "D": args.D, "S": d.S, "R": d.R, "size": ac.ball_size(w, n, args.D)}
        if args.brute:
            out["brute_size"] = brute_ball_size(w, n, args.D, args.budget)
        return out, EXIT_OK
    V = vector_array(M.spec, M.n, args.budget)
    size = int((poset_weights(M, V) <= args.D).sum())
    return {"q": M.q, "n": M.n, "D": args.D, "size": size, "brute_size": size}, EXIT_OK


def cmd_ball_enumerate(args):
    M = _space(args)
    center = _vector(args.center) if args.center else [0] * M.n
    V = vector_array(M.spec, M.n, args.budget)
    c = np.asarray(M.vector(center), dtype=np.int64)
    diff = M.spec.sub_table[V, c[None, :]]
    members = V[poset_weights(M, diff) <= args.D]
    return {"q": M.q, "n": M.n, "D": args.D, "center": center, "size": len(members),
            "members": _sorted_vectors(members.tolist())}, EXIT_OK


def cmd_anticode_size(args):
    M, _ = _chain_space(args)
    report = ac.optimal_anticode_size(M.weight, M.n, args.D, with_witnesses=args.witnesses)
    out = report.to_dict()
    if args.brute:
        out["brute_a_star"] = brute_a_star(M.weight, M.n, args.D, args.clique_budget)
    return out, EXIT_OK


def cmd_anticode_build(args):
    M, rl = _chain_space(args)
    center = rl.to_usual(_vector(args.center)) if args.center else [0] * M.n
    K = _vector(args.K) if args.K is not None else None
    A = ac.build_optimal_anticode(M, center, args.D, K)
    members = _sorted_vectors(rl.from_usual(v) for v in A)
    return {"q": M.q, "n": M.n, "D": args.D, "size": len(A), "diameter": ac.diameter(A, M),
            "members": members}, EXIT_OK


def cmd_anticode_check(args):
    M, rl = _chain_space(args)
    A = [rl.to_usual(v) for v in _load_set(args.set)]
    res = ac.is_optimal_anticode(A, M, args.D).to_dict()
    if res["center"] is not None:
        res["center"] = rl.from_usual(res["center"])
    return res, EXIT_OK if res["optimal"] else EXIT_CHECK


def _code(args) -> cd.Code:
    w = _weight(args)
    w.require_valid()
    return cd.load_code(args.code, w)


def cmd_code_report(args):
    C = _code(args)
    return {"q": C.space.q, "n": C.space.n, "size": len(C), **cd.code_report(C).to_dict()}, EXIT_OK


def cmd_code_check(args):
    C = _code(args)
    rep = cd.code_report(C)
    key = args.property.replace("-", "_")
    dp = cd.diameter_perfect_product(C)
    out = {"property": args.property, "holds": bool(getattr(rep, key)), **rep.to_dict(),
           "a_star": dp.a_star, "product": dp.product, "space_size": dp.space_size}
    return out, EXIT_OK if out["holds"] else EXIT_CHECK


def cmd_code_build_mds(args):
    M, _ = _chain_space(args)
    if args.map == "constant":
        assign = cd.constant_assignment(args.d)
    elif args.map == "linear":
        assign = cd.linear_assignment(M.spec, M.n, args.d)
    else:
        assign = cd.random_assignment(M.spec, M.n, args.d, np.random.default_rng(args.seed))
    C = cd.construct_mds(M, args.d, assign)
    return {**C.to_dict(), "report": cd.code_report(C).to_dict() if len(C) > 1 else None}, EXIT_OK


def cmd_code_build_threshold(args):
    M, _ = _chain_space(args)
    K = _vector(args.K) if args.K is not None else None
    C = cd.construct_threshold_code(M, args.S, args.R, K)
    crit = cd.diameter_perfect_criterion(M.weight, args.S)
    dp = cd.diameter_perfect_product(C)
    return {**C.to_dict(), "criterion": crit.to_dict(), "d_weighted": dp.D, "a_star": dp.a_star,
            "product": dp.product, "space_size": dp.space_size,
            "diameter_perfect": dp.equality}, EXIT_OK


def _sweep_config(args, **overrides) -> SweepConfig:
    kw = dict(seed=args.seed, budget=args.budget)
    if args.fields:
        kw["fields"] = tuple(_vector(args.fields))
    if getattr(args, "n_max", None):
        kw["n_max"] = args.n_max
    if getattr(args, "random_weights", None) is not None:
        kw["random_weights"] = args.random_weights
    if getattr(args, "weight_file", None):
        kw["weight_files"] = tuple(args.weight_file)
    if getattr(args, "only", None):
        kw["only"] = tuple(args.only)
    if getattr(args, "no_naive_regression", False):
        kw["naive_regression"] = False
    kw.update(overrides)
    return SweepConfig(**kw)


def cmd_verify(args):
    report = run_verification_suite(_sweep_config(args)).to_dict()
    return report, EXIT_OK if report["passed"] else EXIT_CHECK


def cmd_search_equality(args):
    kw = {"hunt_max_value": args.max_value}
    if args.fields:
        kw["hunt_fields"] = tuple(_vector(args.fields))
    cfg = SweepConfig(seed=args.seed, **kw)
    res = check_equality_hunt(cfg, Context(cfg))
    out = {"fields": list(cfg.hunt_fields), "max_value": cfg.hunt_max_value,
           "searched": res.instances, "status": res.status,
           "found": res.details["equality_instances"], "outcome": res.notes[0],
           "examples": res.details["examples"], "counterexamples": res.counterexamples}
    return out, EXIT_OK if res.status != "fail" else EXIT_CHECK


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="posetcodes", description=__doc__.splitlines()[0])
    top = parser.add_subparsers(dest="object", required=True, parser_class=_Parser)

    weight = top.add_parser("weight", help="weight tables").add_subparsers(dest="verb", required=True)
    p = weight.add_parser("stats", help="M_w, m_w, image, S_w")
    _common(p, n=False)
    p.set_defaults(func=cmd_weight_stats)
    p = weight.add_parser("validate", help="check positivity, symmetry, triangle")
    _common(p, n=False)
    p.set_defaults(func=cmd_weight_validate)

    ball = top.add_parser("ball", help="metric balls").add_subparsers(dest="verb", required=True)
    p = ball.add_parser("size", help="closed-form ball size")
    _common(p, D=True)
    p.add_argument("--brute", action="store_true", help="also count by enumeration")
    p.set_defaults(func=cmd_ball_size)
    p = ball.add_parser("enumerate", help="list the ball members")
    _common(p, D=True)
    p.add_argument("--center", help="comma-separated vector (default 0)")
    p.set_defaults(func=cmd_ball_enumerate)

    anti = top.add_parser("anticode", help="optimal anticodes").add_subparsers(dest="verb", required=True)
    p = anti.add_parser("size", help="closed-form A*(D)")
    _common(p, D=True)
    p.add_argument("--witnesses", action="store_true")
    p.add_argument("--brute", action="store_true", help="also solve the maximum clique")
    p.add_argument("--clique-budget", type=int, default=CLIQUE_BUDGET)
    p.set_defaults(func=cmd_anticode_size)
    p = anti.add_parser("build", help="construct a classified optimal anticode")
    _common(p, D=True)
    p.add_argument("--center")
    p.add_argument("--K", help="comma-separated member of the lower family")
    p.set_defaults(func=cmd_anticode_build)
    p = anti.add_parser("check", help="is a set D-optimal, and of which form")
    _common(p, D=True)
    p.add_argument("--set", required=True, help="JSON file or '1,0;0,1;...'")
    p.set_defaults(func=cmd_anticode_check)

    code = top.add_parser("code", help="codes").add_subparsers(dest="verb", required=True)
    p = code.add_parser("report", help="distances, MDS, perfect, diameter perfect")
    _common(p, n=False)
    p.add_argument("--code", required=True, help='JSON file {"q", "n", "words"}')
    p.set_defaults(func=cmd_code_report)
    p = code.add_parser("check", help="test one property; exit 1 if it fails")
    _common(p, n=False)
    p.add_argument("--code", required=True)
    p.add_argument("--property", choices=("mds", "perfect", "diameter-perfect"),
                   default="diameter-perfect")
    p.set_defaults(func=cmd_code_check)
    p = code.add_parser("build-mds", help="graph of a map F_q^(n-d+1) -> F_q^(d-1)")
    _common(p)
    p.add_argument("--d", type=int, required=True, help="poset minimum distance")
    p.add_argument("--map", choices=("constant", "linear", "random"), default="linear")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_code_build_mds)
    p = code.add_parser("build-threshold", help="code with distance S + (R-1) M_w")
    _common(p)
    p.add_argument("--S", type=int, required=True)
    p.add_argument("--R", type=int, required=True)
    p.add_argument("--K", help="comma-separated maximum upper set at level S")
    p.set_defaults(func=cmd_code_build_threshold)

    p = top.add_parser("verify", help="run the full verification sweep")
    p.add_argument("--fields", help="comma-separated field orders")
    p.add_argument("--n-max", type=int)
    p.add_argument("--random-weights", type=int)
    p.add_argument("--weight-file", action="append", help="extra weight table (repeatable)")
    p.add_argument("--only", action="append", help="run only this check (repeatable)")
    p.add_argument("--no-naive-regression", action="store_true", help="skip the naive-weight regression")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_verify)

    p = top.add_parser("search-equality", help="hunt for equality in the diameter-perfect criterion")
    p.add_argument("--fields", help="comma-separated field orders (default 4,8,9)")
    p.add_argument("--max-value", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_search_equality)
    return parser


# -- output ---------------------------------------------------------------------------

def _table(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        if "checks" in obj:
            for c in obj["checks"]:
                lines.append(f"{pad}{c['status'].upper():5} {c['name']:34} "
                             f"{c['instances']:6} instances  {c['seconds']:7.2f}s")
                for ex in c["counterexamples"][:3]:
                    lines.append(f"{pad}      counterexample: {json.dumps(ex)}")
            lines.append(f"{pad}seed={obj['seed']} passed={obj['passed']} failures={obj['failures']}")
            return lines
        width = max((len(str(k)) for k in obj), default=0)
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_table(v, indent + 1))
            else:
                lines.append(f"{pad}{str(k):{width}}  {json.dumps(v)}")
    elif isinstance(obj, list):
        for item in obj:
            lines.extend(_table(item, indent) if isinstance(item, dict) else [f"{pad}{json.dumps(item)}"])
    else:
        lines.append(f"{pad}{obj}")
    return lines


def _flat(v) -> bool:
    items = v.values() if isinstance(v, dict) else v
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and all(
        not isinstance(y, (dict, list)) for y in x)) for x in items) and len(v) <= 16


def _default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"not serialisable: {type(o).__name__}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out, code = args.func(args)
    except BudgetExceeded as exc:
        print(json.dumps({"error": "budget", "message": str(exc)}), file=sys.stderr)
        return EXIT_BUDGET
    except (ValidationError, DomainError) as exc:
        print(json.dumps({"error": "validation", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except ContractError as exc:
        print(json.dumps({"error": "contract", "message": str(exc)}), file=sys.stderr)
        return EXIT_CHECK
    except PosetCodesError as exc:
        print(json.dumps({"error": "error", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    out = json.loads(json.dumps(out, default=_default))
    if args.format == "table":
        print("\n".join(_table(out)))
    else:
        print(json.dumps(out, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
