"""Command-line front end.

    lexcar ia GAME
    lexcar check-complete MODEL [--folds N | --common]
    lexcar check-incomplete MODEL [--common] [--pairwise]
    lexcar transform MODEL --direction {co2in,in2co} [--out PATH]
    lexcar verify-theorem [GAME] [--random N --seed S]

Every run produces a report (JSON by default, ``--format text`` for a
readable rendering).  Exit codes: 0 all checks pass, 1 a check failed,
2 the input could not be read or parsed.

LEXCAR_VERBOSITY=0 drops witnesses and violations from reports, 2 adds the
full per-fold verdicts; the default is 1.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .beliefs import format_belief
from .complete import (
    caution_verdict_co,
    common_full_belief_caution_co,
    complete_model_to_json,
    n_fold_assumption,
    parse_complete_model,
)
from .exact import ContractError
from .game import GameParseError, parse_game
from .incomplete import (
    caution_verdict_in,
    common_full_belief,
    common_support_condition,
    incomplete_model_to_json,
    n_fold_supported_and_prior,
    parse_incomplete_model,
    rationality_verdict,
)
from .solver import iterated_admissibility
from .theorem import verify_theorem
from .transform import (
    TransformCheckError,
    beliefs_pairwise_distinct,
    choice_marginals_equal,
    complete_to_incomplete,
    find_isomorphism,
    incomplete_to_complete,
)

SCHEMA_VERSION = 1
EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
IA_NOTE = "external quantifiers decided by iterated admissibility"


class InputError(Exception):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


@dataclass
class RunReport:
    command: str
    inputs: list = field(default_factory=list)
    body: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)  # name -> bool
    error: dict = None
    exit_status: int = EXIT_PASS

    def finish(self) -> "RunReport":
        if self.error is not None:
            self.exit_status = EXIT_INPUT
        elif not all(self.checks.values()):
            self.exit_status = EXIT_FAIL
        return self

    def to_json(self) -> dict:
        out = {"schema_version": SCHEMA_VERSION, "tool": f"lexcar {__version__}", "command": self.command,
               "inputs": self.inputs}
        if self.error is not None:
            out["error"] = self.error
        else:
            out.update(self.body)
            out["checks"] = self.checks
        out["exit_status"] = self.exit_status
        return out


def verbosity() -> int:
    try:
        return int(os.environ.get("LEXCAR_VERBOSITY", "1"))
    except ValueError:
        return 1


def _verdict(v) -> dict:
    d = v.to_json()
    if verbosity() < 1:
        d.pop("witnesses", None)
        d.pop("violations", None)
    return d


def read_input(path: str, report: RunReport) -> str:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise InputError(path, e.strerror or "cannot read") from None
    report.inputs.append({"path": path, "sha256": hashlib.sha256(raw).hexdigest()})
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError:
        raise InputError(path, "not UTF-8 text") from None


def _sets(pair) -> list:
    return [sorted(pair[0]), sorted(pair[1])]


# ---------------------------------------------------------------- commands

def cmd_ia(args, rep: RunReport) -> RunReport:
    game = parse_game(read_input(args.game, rep))
    ia = iterated_admissibility(game)
    rep.body = {
        "rounds": ia.to_json(),
        "stable_at": ia.m,
        "survivors": [list(ia.survivors(1)), list(ia.survivors(2))],
    }
    return rep


def _base_dir(path):
    return os.path.dirname(os.path.abspath(path))


def cmd_check_complete(args, rep: RunReport) -> RunReport:
    m = parse_complete_model(read_input(args.model, rep), _base_dir(args.model))
    folds = args.folds
    common = folds is None
    if common:
        report = n_fold_assumption(m, None, stop_when_stable=True)
        caut = common_full_belief_caution_co(m)
    elif folds >= 1:
        report = n_fold_assumption(m, folds)
    else:
        report = None
    types = []
    for t in m.types:
        ent = {
            "player": t.player,
            "name": t.name,
            "belief": format_belief(m.types[t]),
            "optimal": sorted(m.optimal(t)),
            "caution": _verdict(caution_verdict_co(m, t)),
        }
        ok = ent["caution"]["ok"]
        if report is not None:
            vs = report.verdicts[t]
            if verbosity() >= 2:
                ent["folds"] = [_verdict(v) for v in vs]
            last = vs[min(folds, len(vs) - 1)] if not common else vs[-1]
            # show the first failing fold with its witnesses
            bad = next((n for n, v in enumerate(vs) if not v), None)
            if bad is not None:
                ent["first_failing_fold"] = {"fold": bad, **_verdict(vs[bad])}
            if common:
                ent["common_full_belief_caution"] = caut[t]
                ent["common_assumption_of_rationality"] = bool(last)
                ok = caut[t] and bool(last)
            else:
                ent[f"up_to_{folds}_fold_assumption"] = bool(last)
                ok = bool(last)
        types.append(ent)
        rep.checks[f"{t.player}:{t.name}"] = ok
    rep.body = {
        "mode": "common" if common else f"folds={folds}",
        "decision_procedure": IA_NOTE,
        "ia_rounds": m.ia.to_json(),
        "stable_at": report.stable_at if report is not None else None,
        "types": types,
    }
    return rep


def cmd_check_incomplete(args, rep: RunReport) -> RunReport:
    m = parse_incomplete_model(read_input(args.model, rep), _base_dir(args.model))
    sp = n_fold_supported_and_prior(m, None, stop_when_stable=True, pairwise=args.pairwise)
    cc = common_full_belief(m, "caution")
    cr = common_full_belief(m, "rationality")
    cb = common_support_condition(m, pairwise=args.pairwise)
    types = []
    for t in m.types:
        vs = sp.verdicts[t]
        local = {
            "caution": _verdict(caution_verdict_in(m, t)),
            "rationality": _verdict(rationality_verdict(m, t)),
            "supported_and_prior": _verdict(vs[min(1, len(vs) - 1)]),
        }
        ent = {
            "player": t.player,
            "name": t.name,
            "carries_u": m.carries_u(t),
            "belief": format_belief(m.beliefs[t]),
            "optimal": sorted(m.optimal(t)),
            **local,
            "common_full_belief": {
                "caution": cc[t],
                "rationality": cr[t],
                "supported_and_prior": bool(vs[-1]),
            },
            "common_support_condition": cb[t],
        }
        if verbosity() >= 2:
            ent["supported_and_prior_folds"] = [_verdict(v) for v in vs]
        types.append(ent)
        key = f"{t.player}:{t.name}"
        if args.common:
            rep.checks[key] = cb[t]
        else:
            rep.checks[key] = all(v["ok"] for v in local.values())
    rep.body = {
        "mode": "common" if args.common else "local",
        "support_test": "pairwise" if args.pairwise else "type",
        "decision_procedure": IA_NOTE,
        "ia_rounds": m.ia.to_json(),
        "stable_at": sp.stable_at,
        "types": types,
        "common_support_condition_optimal": _sets(
            [{c for t in m.types_of(i) if cb[t] and m.carries_u(t) for c in m.optimal(t)} for i in (1, 2)]
        ),
    }
    return rep


def cmd_transform(args, rep: RunReport) -> RunReport:
    text = read_input(args.model, rep)
    prov = {"tool": f"lexcar {__version__}", "direction": args.direction, "source": rep.inputs[0]}
    if args.direction == "co2in":
        m = parse_complete_model(text, _base_dir(args.model))
        try:
            out, groups = complete_to_incomplete(m, return_groups=True)
        except TransformCheckError as e:
            rep.checks["observations"] = False
            rep.body = {"counterexample": str(e)}
            return rep
        rep.checks["observations"] = True
        rep.checks["choice_marginals"] = all(
            choice_marginals_equal(m.types[t], out.beliefs[th]) for t in m.types for th in groups[t]
        )
        rep.checks["optimality_preserved"] = all(m.optimal(t) == out.optimal(groups[t][0]) for t in m.types)
        if beliefs_pairwise_distinct(m):
            iso = find_isomorphism(incomplete_to_complete(out), m)
            rep.checks["round_trip_isomorphic"] = iso is not None
        groups_json = {t.name: [th.name for th in groups[t]] for t in m.types}
        payload = incomplete_model_to_json(out, prov)
        summary = {"type_count": len(out.types), "groups": groups_json}
    else:
        m = parse_incomplete_model(text, _base_dir(args.model))
        out, rep_map = incomplete_to_complete(m, return_map=True)
        rep.checks["choice_marginals"] = all(
            choice_marginals_equal(m.beliefs[th], out.types[rep_map[th]]) for th in m.types
        )
        payload = complete_model_to_json(out, prov)
        summary = {
            "type_count": len(out.types),
            "classes": {r.name: sorted(th.name for th in m.types if rep_map[th] == r) for r in out.types},
            "beliefs": {t.name: format_belief(b) for t, b in out.types.items()},
        }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        summary["written"] = args.out
    else:
        summary["output"] = payload
    rep.body = summary
    return rep


def cmd_verify_theorem(args, rep: RunReport) -> RunReport:
    games = []
    if args.game:
        games.append((args.game, parse_game(read_input(args.game, rep))))
    if args.random:
        from .corpus import corpus_games

        rep.inputs.append({"corpus": {"seed": args.seed, "games": args.random}})
        games += [(f"random[{k}]", g) for k, g in enumerate(corpus_games(args.seed, args.random))]
    if not games:
        raise InputError("arguments", "give a game file or --random N")
    results = []
    for name, g in games:
        chk = verify_theorem(g)
        ent = {
            "game": name,
            "ia_survivors": _sets(chk.survivors),
            "car_optimal": _sets(chk.car),
            "common_support_condition_optimal": _sets(chk.incomplete),
            "common_support_condition_pairwise_optimal": _sets(chk.strict),
            "round_trip_car_optimal": _sets(chk.converse),
            "agree": chk.agree,
        }
        mm = chk.mismatch()
        if mm:
            ent["mismatch"] = {"player": mm[0], "choice": mm[1], "route": mm[2]}
        results.append(ent)
        rep.checks[name] = chk.agree
    rep.body = {"decision_procedure": IA_NOTE, "results": results}
    return rep


# ---------------------------------------------------------------- rendering

def render_text(rep: RunReport) -> str:
    d = rep.to_json()
    lines = [f"{d['command']}  (exit {d['exit_status']})"]
    for inp in d["inputs"]:
        if "path" in inp:
            lines.append(f"  input {inp['path']}  sha256 {inp['sha256'][:16]}")
        else:
            lines.append(f"  input {inp}")
    if "error" in d:
        lines.append(f"  error at {d['error']['where']}: {d['error']['message']}")
        return "\n".join(lines)
    if "rounds" in d:
        width = max(len(",".join(r[0])) + 4 for r in d["rounds"])
        lines.append(f"  {'k':>3}  {'D_1':<{width}}D_2")
        for k, r in enumerate(d["rounds"]):
            lines.append(f"  {k:>3}  {'{' + ','.join(r[0]) + '}':<{width}}{{{','.join(r[1])}}}")
    for t in d.get("types", []):
        tag = "u" if t.get("carries_u") else ("" if "carries_u" not in t else "v")
        lines.append(f"  {t['name']} (player {t['player']}{', ' + tag if tag else ''})  b = {t['belief']}")
        lines.append(f"      optimal {{{','.join(t['optimal'])}}}")
        for key in ("caution", "rationality", "supported_and_prior"):
            if key in t:
                lines.append(f"      {key:<34}{'pass' if t[key]['ok'] else 'FAIL'}")
        for key in ("common_full_belief_caution", "common_assumption_of_rationality", "common_support_condition"):
            if key in t:
                lines.append(f"      {key:<34}{'pass' if t[key] else 'FAIL'}")
        for key in t:
            if key.startswith("up_to_"):
                lines.append(f"      {key:<34}{'pass' if t[key] else 'FAIL'}")
        if "first_failing_fold" in t:
            ff = t["first_failing_fold"]
            lines.append(f"      fails at fold {ff['fold']}: {ff.get('reason', '')} {ff.get('violations', '')}".rstrip())
    for r in d.get("results", []):
        lines.append(f"  {r['game']}: {'agree' if r['agree'] else 'MISMATCH'}  survivors {r['ia_survivors']}")
        if "mismatch" in r:
            lines.append(f"      {r['mismatch']}")
    for key, label in (("groups", "group"), ("classes", "class"), ("beliefs", "belief")):
        if key in d:
            for a, b in d[key].items():
                lines.append(f"  {label} {a}: {b}")
    if "written" in d:
        lines.append(f"  wrote {d['written']}")
    if "counterexample" in d:
        lines.append(f"  counterexample: {d['counterexample']}")
    for name, ok in d["checks"].items():
        lines.append(f"  [{'PASS' if ok else 'FAIL'}] {name}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lexcar", description="Check and transform lexicographic epistemic models.")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--version", action="version", version=f"lexcar {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    # --format is accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    s = sub.add_parser("ia", parents=[common], help="iterated admissibility rounds of a game")
    s.add_argument("game")
    s.set_defaults(func=cmd_ia)

    s = sub.add_parser("check-complete", parents=[common], help="caution / n-fold / common assumption of rationality")
    s.add_argument("model")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--folds", type=int, help="check up to N-fold assumption (0 = caution only)")
    g.add_argument("--common", action="store_true", help="common assumption of rationality (default)")
    s.set_defaults(func=cmd_check_complete)

    s = sub.add_parser("check-incomplete", parents=[common], help="caution, rationality, supported choices and prior belief in u")
    s.add_argument("model")
    s.add_argument("--common", action="store_true", help="require the common support condition for every type")
    s.add_argument("--pairwise", action="store_true", help="require the supporting (choice, type) pair to be deemed possible")
    s.set_defaults(func=cmd_check_incomplete)

    s = sub.add_parser("transform", parents=[common], help="complete <-> incomplete model transformation")
    s.add_argument("model")
    s.add_argument("--direction", choices=("co2in", "in2co"), required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("verify-theorem", parents=[common], help="IA survivors vs CAR vs the common support condition on a game or a random corpus")
    s.add_argument("game", nargs="?")
    s.add_argument("--random", type=int, default=0, metavar="N")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify_theorem)
    return p


def run(args) -> RunReport:
    rep = RunReport(args.command)
    if getattr(args, "folds", None) is not None and args.folds < 0:
        rep.error = {"where": "--folds", "message": "must be >= 0"}
        return rep.finish()
    try:
        args.func(args, rep)
    except InputError as e:
        rep.error = {"where": e.where, "message": e.message}
    except GameParseError as e:
        rep.error = {"where": e.where, "message": e.message}
    except ContractError as e:
        rep.error = {"where": "model", "message": str(e)}
    return rep.finish()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = run(args)
    if args.format == "text":
        print(render_text(rep))
    else:
        print(json.dumps(rep.to_json(), indent=2))
    if rep.error is not None:
        print(f"lexcar: error at {rep.error['where']}: {rep.error['message']}", file=sys.stderr)
    return rep.exit_status

