"""Command-line front end.

Subcommands: winners, manipulate, control-av, bribe, reduce, verify, realize.
Solve commands exit 0 for YES, 1 for NO, 2 on errors; verify exits 0 iff all
reports agree. Every flag can be preset through an environment variable with
the TIEVOTE_ prefix (e.g. TIEVOTE_FORMAT=structured); flags win over the
environment. Identical invocations produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .orders import (
    CapExceededError,
    ParseError,
    format_order,
    parse_profile,
)
from .rules import (
    Rule,
    ScoringExtension,
    WinnerModel,
    copeland_scores,
    profile_scores,
    winners,
)
from .solvers import (
    BriberyInstance,
    ControlAVInstance,
    ManipulationInstance,
    bribery_exact,
    ccav_exact,
    format_instance,
    parse_instance,
    replay_bribery,
    replay_control,
    replay_manipulation,
    solve_manipulation,
    weighted_bribery_t_approval,
)
from .reductions import (
    REDUCTION_KINDS,
    PartitionInstance,
    PartitionPrimeInstance,
    X3CInstance,
    enumerate_partition_instances,
    enumerate_partition_prime_instances,
    gen_borda_avg_cwcm,
    gen_borda_cwcm,
    gen_copeland_cwcm,
    gen_x3c_plurality_ccav,
    partition_to_partition_prime,
    random_x3c_instance,
    verify_reduction,
)
from .tournament import OrderPair, RealizationError, realize_two_total_orders

_ENV_PREFIX = "TIEVOTE_"


def _env(name: str, fallback):
    return os.environ.get(_ENV_PREFIX + name.upper().replace("-", "_"), fallback)


def _emit(args, record: dict, text: str):
    if args.format == "structured":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# ---------------------------------------------------------------------------
# winners
# ---------------------------------------------------------------------------


def _rule_from_args(args, m: int) -> Rule:
    model = WinnerModel(args.winner_model)
    if args.rule == "copeland":
        return Rule.copeland(Fraction(args.alpha), model)
    ext = ScoringExtension(args.ext)
    if args.rule == "borda":
        return Rule.borda(m, ext, model)
    if args.rule == "plurality":
        return Rule.plurality(m, ext, model)
    if args.rule == "t-approval":
        return Rule.t_approval(m, args.t, ext, model)
    vector = [Fraction(s) for s in args.vector.split(",")]
    return Rule.scoring(vector, ext, model)


def cmd_winners(args) -> int:
    profile = parse_profile(_read(args.profile))
    rule = _rule_from_args(args, len(profile.candidates))
    if rule.kind == "copeland":
        scores = copeland_scores(profile, rule.alpha)
    else:
        scores = profile_scores(profile, rule.vector, rule.extension)
    winner_set = sorted(winners(profile, rule))
    lines = [f"{c}: {scores[c]}" for c in sorted(scores)]
    lines.append("winners: " + (",".join(winner_set) if winner_set else "(none)"))
    record = {
        "record": "scores",
        "scores": {c: str(s) for c, s in scores.items()},
        "winners": winner_set,
    }
    _emit(args, record, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# solve commands
# ---------------------------------------------------------------------------


def _witness_lines(inst, witness) -> list:
    if isinstance(inst, ManipulationInstance):
        return [f"{w}: {format_order(o)}" for o, w in zip(witness, inst.manipulator_weights)]
    if isinstance(inst, ControlAVInstance):
        return [
            f"add {i}: {inst.unregistered.voters[i][1]}: {format_order(inst.unregistered.voters[i][0])}"
            for i in witness
        ]
    return [f"voter {i} -> {format_order(o)}" for i, o in witness]


def _witness_record(inst, witness):
    if isinstance(inst, ManipulationInstance):
        return [format_order(o) for o in witness]
    if isinstance(inst, ControlAVInstance):
        return list(witness)
    return [[i, format_order(o)] for i, o in witness]


def _report_decision(args, inst, algorithm: str, decision, replay_fn) -> int:
    replay_ok = None
    if decision.answer:
        replay_ok = replay_fn(inst, decision.witness)
        if not replay_ok:
            raise RuntimeError("witness replay failed; this is a solver bug")
    lines = [f"answer: {'YES' if decision.answer else 'NO'}", f"algorithm: {algorithm}"]
    if decision.answer:
        lines.append("replay: ok")
        lines.append("witness:")
        lines.extend(_witness_lines(inst, decision.witness))
    record = {
        "record": "decision",
        "answer": decision.answer,
        "algorithm": algorithm,
        "witness": _witness_record(inst, decision.witness) if decision.answer else None,
        "replay": replay_ok,
    }
    _emit(args, record, "\n".join(lines) + "\n")
    return 0 if decision.answer else 1


def _load_typed_instance(path: str, expected: type, label: str):
    inst = parse_instance(_read(path))
    if not isinstance(inst, expected):
        raise ParseError(f"{path}: expected a {label} instance, got type {type(inst).__name__}")
    return inst


def cmd_manipulate(args) -> int:
    inst = _load_typed_instance(args.instance, ManipulationInstance, "manipulation")
    algorithm, decision = solve_manipulation(
        inst,
        args.algo,
        max_manipulators=args.cap_manipulators,
        max_candidates=args.cap_candidates,
    )
    return _report_decision(args, inst, algorithm, decision, replay_manipulation)


def cmd_control_av(args) -> int:
    inst = _load_typed_instance(args.instance, ControlAVInstance, "control-av")
    decision = ccav_exact(
        inst, max_unregistered=args.cap_unregistered, max_add_limit=args.cap_add_limit
    )
    return _report_decision(args, inst, "exact", decision, replay_control)


def cmd_bribe(args) -> int:
    inst = _load_typed_instance(args.instance, BriberyInstance, "bribery")
    if args.algo == "t-approval-bribery":
        algorithm, decision = args.algo, weighted_bribery_t_approval(inst)
    else:
        algorithm, decision = "exact", bribery_exact(
            inst,
            max_voters=args.cap_voters,
            max_bribes=args.cap_bribes,
            max_domain=args.cap_domain,
        )
    return _report_decision(args, inst, algorithm, decision, replay_bribery)


# ---------------------------------------------------------------------------
# reduce / verify
# ---------------------------------------------------------------------------

_PARTITION_SOURCE_KINDS = ("partition-prime", "borda-max", "borda-rounddown")
_PARTITION_PRIME_SOURCE_KINDS = (
    "borda-avg",
    "copeland-0-nonunique",
    "copeland-half-nonunique",
    "copeland-0-unique",
)


def _parse_source_file(kind: str, text: str):
    headers = {}
    set_lines = []
    in_sets = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line == "sets:":
            in_sets = True
            continue
        if in_sets:
            set_lines.append([s.strip() for s in line.split(",")])
            continue
        if ":" not in line:
            raise ParseError(f"line {lineno}: expected 'key: value', got {line!r}")
        key, _, value = line.partition(":")
        headers[key.strip()] = value.strip()
    if kind in _PARTITION_SOURCE_KINDS:
        values = tuple(int(s) for s in headers["values"].split(","))
        return PartitionInstance(values)
    if kind in _PARTITION_PRIME_SOURCE_KINDS:
        values = tuple(int(s) for s in headers["values"].split(","))
        return PartitionPrimeInstance(values, int(headers["target"]))
    if kind == "x3c-ccav":
        base = tuple(s.strip() for s in headers["base"].split(","))
        return X3CInstance(base, tuple(frozenset(s) for s in set_lines))
    raise ParseError(f"unknown reduction kind {kind!r}")


def _describe_source(src) -> str:
    if isinstance(src, PartitionInstance):
        return "values=" + ",".join(str(v) for v in src.values)
    if isinstance(src, PartitionPrimeInstance):
        return "values=" + ",".join(str(v) for v in src.values) + f" target={src.target}"
    return f"base={len(src.base)} sets={len(src.sets)}"


_COPELAND_REDUCTIONS = {
    "copeland-0-nonunique": (Fraction(0), WinnerModel.NONUNIQUE),
    "copeland-half-nonunique": (Fraction(1, 2), WinnerModel.NONUNIQUE),
    "copeland-0-unique": (Fraction(0), WinnerModel.UNIQUE),
}


def cmd_reduce(args) -> int:
    src = _parse_source_file(args.kind, _read(args.source))
    if args.kind == "partition-prime":
        target = partition_to_partition_prime(src)
        text = "values: " + ",".join(str(v) for v in target.values) + f"\ntarget: {target.target}\n"
        record = {"record": "instance", "values": list(target.values), "target": target.target}
        _emit(args, record, text)
        return 0
    if args.kind in ("borda-max", "borda-rounddown"):
        ext = ScoringExtension.MAX if args.kind == "borda-max" else ScoringExtension.ROUND_DOWN
        target = gen_borda_cwcm(src, ext)
    elif args.kind == "borda-avg":
        target = gen_borda_avg_cwcm(src, strict=args.strict)
    elif args.kind in _COPELAND_REDUCTIONS:
        alpha, model = _COPELAND_REDUCTIONS[args.kind]
        target = gen_copeland_cwcm(src, alpha, model, strict=args.strict)
    else:
        target = gen_x3c_plurality_ccav(src, strict=args.strict)
    text = format_instance(target)
    _emit(args, {"record": "instance", "text": text}, text)
    return 0


def _iter_sweep_sources(args):
    if args.kind in _PARTITION_SOURCE_KINDS:
        yield from enumerate_partition_instances(args.t_max, args.val_max)
    elif args.kind in _PARTITION_PRIME_SOURCE_KINDS:
        yield from enumerate_partition_prime_instances(args.t_max, args.val_max)
    else:
        rng = random.Random(args.seed)
        for _ in range(args.count):
            yield random_x3c_instance(rng, max_sets=args.n_max)


def cmd_verify(args) -> int:
    if args.source:
        sources = [_parse_source_file(args.kind, _read(args.source))]
    elif args.sweep:
        sources = _iter_sweep_sources(args)
    else:
        raise ParseError("verify needs a source file or --sweep")
    total = agreed = 0
    failures = 0
    for src in sources:
        total += 1
        try:
            report = verify_reduction(args.kind, src, strict=args.strict)
        except CapExceededError as exc:
            failures += 1
            _emit(
                args,
                {"record": "reduction", "kind": args.kind, "source": _describe_source(src), "error": str(exc)},
                f"[error] {args.kind} {_describe_source(src)}: {exc}",
            )
            continue
        agreed += report.agree
        mark = "ok" if report.agree else "DISAGREE"
        text = (
            f"[{mark}] {args.kind} {_describe_source(src)} "
            f"source={'YES' if report.source_answer else 'NO'} "
            f"target={'YES' if report.target_answer else 'NO'}"
        )
        record = {
            "record": "reduction",
            "kind": args.kind,
            "source": _describe_source(src),
            "source_answer": report.source_answer,
            "target_answer": report.target_answer,
            "agree": report.agree,
        }
        _emit(args, record, text)
    summary = {"record": "summary", "total": total, "agreed": agreed, "errors": failures}
    _emit(args, summary, f"agreement {agreed}/{total}" + (f" ({failures} errors)" if failures else ""))
    return 0 if agreed == total and failures == 0 else 1


# ---------------------------------------------------------------------------
# realize
# ---------------------------------------------------------------------------


def cmd_realize(args) -> int:
    profile = parse_profile(_read(args.profile))
    if len(profile.voters) != 2:
        raise ParseError("realize needs a profile with exactly two voters")
    pair = OrderPair(profile.voters[0][0], profile.voters[1][0])
    realized = realize_two_total_orders(pair)
    before = sorted(pair.majority_graph().edges)
    after = sorted(realized.majority_graph().edges)

    def fmt_edges(es):
        return ", ".join(f"{a}->{b}" for a, b in es) if es else "(none)"

    text = (
        f"v1': {format_order(realized.first)}\n"
        f"v2': {format_order(realized.second)}\n"
        f"edges before: {fmt_edges(before)}\n"
        f"edges after: {fmt_edges(after)}\n"
    )
    record = {
        "record": "realization",
        "first": format_order(realized.first),
        "second": format_order(realized.second),
        "edges_before": [list(e) for e in before],
        "edges_after": [list(e) for e in after],
    }
    _emit(args, record, text)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_common(sub):
    sub.add_argument(
        "--format",
        choices=("text", "structured"),
        default=_env("format", "text"),
        help="output as human text or line-delimited JSON records",
    )
    sub.add_argument("--seed", type=int, default=int(_env("seed", "0")), help="seed for randomized sweeps")


def _add_rule_flags(sub):
    sub.add_argument("--rule", choices=("borda", "plurality", "t-approval", "copeland", "scoring"), default=_env("rule", "borda"))
    sub.add_argument("--ext", choices=[e.value for e in ScoringExtension], default=_env("ext", "min"))
    sub.add_argument("--t", type=int, default=int(_env("t", "2")), help="t for t-approval")
    sub.add_argument("--alpha", default=_env("alpha", "1/2"), help="Copeland alpha, a rational in [0,1]")
    sub.add_argument("--vector", default=_env("vector", ""), help="explicit scoring vector, e.g. 2,1,0")
    sub.add_argument("--winner-model", choices=("nonunique", "unique"), default=_env("winner-model", "nonunique"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tievote", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("winners", help="score a profile and print the winner set")
    p.add_argument("profile", help="profile file")
    _add_rule_flags(p)
    _add_common(p)
    p.set_defaults(func=cmd_winners)

    p = subs.add_parser("manipulate", help="decide coalitional weighted manipulation")
    p.add_argument("instance", help="manipulation instance file")
    p.add_argument(
        "--algo",
        choices=("auto", "exact", "dp", "min-fast", "copeland-p", "llull-flow"),
        default=_env("algo", "auto"),
    )
    p.add_argument("--cap-manipulators", type=int, default=int(_env("cap-manipulators", "6")))
    p.add_argument("--cap-candidates", type=int, default=int(_env("cap-candidates", "4")))
    _add_common(p)
    p.set_defaults(func=cmd_manipulate)

    p = subs.add_parser("control-av", help="decide control by adding voters")
    p.add_argument("instance", help="control instance file")
    p.add_argument("--cap-unregistered", type=int, default=int(_env("cap-unregistered", "20")))
    p.add_argument("--cap-add-limit", type=int, default=int(_env("cap-add-limit", "6")))
    _add_common(p)
    p.set_defaults(func=cmd_control_av)

    p = subs.add_parser("bribe", help="decide bribery")
    p.add_argument("instance", help="bribery instance file")
    p.add_argument("--algo", choices=("exact", "t-approval-bribery"), default=_env("algo", "exact"))
    p.add_argument("--cap-voters", type=int, default=int(_env("cap-voters", "8")))
    p.add_argument("--cap-bribes", type=int, default=int(_env("cap-bribes", "3")))
    p.add_argument("--cap-domain", type=int, default=int(_env("cap-domain", "512")))
    _add_common(p)
    p.set_defaults(func=cmd_bribe)

    p = subs.add_parser("reduce", help="generate a target instance from a source instance")
    p.add_argument("kind", choices=REDUCTION_KINDS)
    p.add_argument("source", help="source instance file")
    p.add_argument("--strict", action="store_true", help="reject sources outside the construction's normalization")
    _add_common(p)
    p.set_defaults(func=cmd_reduce)

    p = subs.add_parser("verify", help="check source answer == target answer")
    p.add_argument("kind", choices=REDUCTION_KINDS)
    p.add_argument("source", nargs="?", help="source instance file (or use --sweep)")
    p.add_argument("--sweep", action="store_true", help="enumerate sources within the bounds below")
    p.add_argument("--t-max", type=int, default=int(_env("t-max", "4")))
    p.add_argument("--val-max", type=int, default=int(_env("val-max", "6")))
    p.add_argument("--n-max", type=int, default=int(_env("n-max", "7")), help="max sets per x3c instance")
    p.add_argument("--count", type=int, default=int(_env("count", "100")), help="x3c sample size")
    p.add_argument("--strict", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("realize", help="turn two weak orders into two total orders, same majority graph")
    p.add_argument("profile", help="profile file with exactly two voters")
    _add_common(p)
    p.set_defaults(func=cmd_realize)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, ValueError, CapExceededError, RealizationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
