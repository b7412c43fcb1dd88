"""Command-line front end.

Machine-readable JSON goes to stdout and a one-line summary to stderr.
Exit codes: 0 answered, 1 no equilibrium or a counterexample, 2 usage or
input error, 3 brute-force budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from compdiff import graph as graph_io
from compdiff.diffusion import ProfileError, best_response, is_nash, simulate
from compdiff.graph import GameInstance, GraphValidationError, InstanceParseError
from compdiff.paths.forest import PathForest, solve_forest_unweighted, solve_forest_weighted
from compdiff.reductions import (
    KINDS,
    InvalidCertificate,
    PartitionInstance,
    build_gadget,
    certificate_to_profile,
    expected_size,
    expected_utilities,
)
from compdiff.search import DEFAULT_BUDGET, BudgetExceeded, brute_force
from compdiff.structured import CLASSES, NotInClass, recognize_and_order, solve_chain

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _json(path: str):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _game(path: str) -> GameInstance:
    return graph_io.load(_read(path))


def _int_list(path: str, what: str) -> list[int]:
    data = _json(path)
    if not isinstance(data, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in data):
        raise UsageError(f"{path}: {what} must be a JSON array of integers")
    return data


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _say(msg: str) -> None:
    sys.stderr.write(msg + "\n")


def _recheck(game: GameInstance, profile) -> None:
    cex = is_nash(game, profile)
    if cex is not None:
        raise AssertionError(f"solver output {list(profile)} failed verification: {cex}")


def cmd_simulate(args) -> int:
    game = _game(args.game)
    out = simulate(game, _int_list(args.profile, "profile"))
    _emit(out.to_dict())
    _say(f"utilities: {' '.join(map(str, out.utilities))}")
    return EXIT_OK


def cmd_check(args) -> int:
    game = _game(args.game)
    cex = is_nash(game, _int_list(args.profile, "profile"))
    if cex is None:
        _emit({"equilibrium": True})
        _say("equilibrium")
        return EXIT_OK
    _emit({"equilibrium": False, "counterexample": {"player": cex.player, "vertex": cex.vertex, "gain": cex.gain}})
    _say(f"counterexample: player {cex.player} gains {cex.gain} by moving to vertex {cex.vertex}")
    return EXIT_NONE


def cmd_best_response(args) -> int:
    game = _game(args.game)
    v, u = best_response(game, _int_list(args.profile, "profile"), args.player)
    _emit({"player": args.player, "vertex": v, "utility": u})
    _say(f"player {args.player}: best vertex {v} with utility {u}")
    return EXIT_OK


def cmd_brute_force(args) -> int:
    game = _game(args.game)
    rep = brute_force(game, mode="all" if args.all else "first", budget=args.budget)
    out = {"profile": list(rep.found) if rep.found else None, "profiles_checked": rep.profiles_checked}
    if args.all:
        out["equilibria"] = [list(p) for p in rep.equilibria]
    _emit(out)
    if rep.found is None:
        _say(f"none ({rep.profiles_checked} profiles checked)")
        return EXIT_NONE
    _say(f"equilibrium {list(rep.found)}")
    return EXIT_OK


def cmd_solve_paths(args) -> int:
    game = _game(args.game)
    forest = PathForest.from_graph(game.graph)
    use_unit = forest.unit and not args.weighted
    sol = solve_forest_unweighted(forest, game.k) if use_unit else solve_forest_weighted(forest, game.k)
    if sol is None:
        _emit({"profile": None})
        _say("none")
        return EXIT_NONE
    _recheck(game, sol.profile)
    w = sol.witness
    out = {
        "profile": list(sol.profile),
        "solver": "unweighted" if use_unit else "weighted",
        "t": w.t,
        "counts": list(w.counts),
    }
    if w.upper is not None:
        out["upper"] = w.upper
        out["special_path"] = w.special
    _emit(out)
    _say(f"equilibrium {list(sol.profile)} with boundary t={w.t}")
    return EXIT_OK


def cmd_solve_structured(args) -> int:
    game = _game(args.game)
    inst = recognize_and_order(game.graph, args.graph_class)
    sol = solve_chain(inst, game.k, extended=not args.basic)
    if sol is None:
        _emit({"profile": None})
        _say("none")
        return EXIT_NONE
    _recheck(game, sol.profile)
    _emit({"profile": list(sol.profile), "guess": list(sol.guess), "rule": sol.rule, **inst.to_dict()})
    _say(f"equilibrium {list(sol.profile)} for guess {sol.guess}")
    return EXIT_OK


def _source(kind: str, path: str, k: int | None):
    if kind == "is":
        game = _game(path)
        return game.graph, (k if k is not None else game.k)
    values = _int_list(path, "partition values")
    return PartitionInstance(tuple(values), require_equal_halves=kind == "partition-forest"), None


def cmd_reduce(args) -> int:
    src, k = _source(args.kind, args.input, args.k)
    gadget = build_gadget(args.kind, src, k)
    size, formula = gadget.game.n, expected_size(gadget)
    if size != formula:
        raise AssertionError(f"gadget has {size} vertices, size formula gives {formula}")
    sys.stdout.write(graph_io.save(gadget.game) + "\n")
    if args.roles:
        Path(args.roles).write_text(json.dumps({"roles": gadget.role_map(), "metadata": gadget.metadata}, sort_keys=True) + "\n")
    _say(f"{args.kind} gadget: {size} vertices, {gadget.game.k} players")
    return EXIT_OK


def cmd_verify_certificate(args) -> int:
    src, k = _source(args.kind, args.input, args.k)
    gadget = build_gadget(args.kind, src, k)
    cert = _int_list(args.certificate, "certificate")
    profile = certificate_to_profile(gadget, cert)
    out = simulate(gadget.game, profile)
    expected = expected_utilities(gadget, cert)
    ok = is_nash(gadget.game, profile) is None
    match = tuple(out.utilities) == expected
    _emit({
        "profile": list(profile),
        "equilibrium": ok,
        "utilities": list(out.utilities),
        "expected_utilities": list(expected),
        "utilities_match": match,
    })
    _say(f"equilibrium: {'yes' if ok else 'no'}; utilities match: {'yes' if match else 'no'}")
    return EXIT_OK if ok and match else EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="compdiff", description="Competitive diffusion games: simulation and equilibrium search.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="run the diffusion for a profile")
    s.add_argument("game")
    s.add_argument("profile")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("check", help="test whether a profile is an equilibrium")
    s.add_argument("game")
    s.add_argument("profile")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("best-response", help="best vertex for one player")
    s.add_argument("game")
    s.add_argument("profile")
    s.add_argument("--player", type=int, required=True)
    s.set_defaults(func=cmd_best_response)

    s = sub.add_parser("brute-force", help="exhaustive equilibrium search")
    s.add_argument("game")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--all", action="store_true", help="list every equilibrium")
    s.set_defaults(func=cmd_brute_force)

    s = sub.add_parser("solve-paths", help="exact search on a forest of paths")
    s.add_argument("game")
    s.add_argument("--weighted", action="store_true", help="use the weighted solver even for unit weights")
    s.set_defaults(func=cmd_solve_paths)

    s = sub.add_parser("solve-structured", help="search on chain, cochain or threshold graphs")
    s.add_argument("game")
    s.add_argument("--class", dest="graph_class", choices=CLASSES, required=True)
    s.add_argument("--basic", action="store_true", help="only the basic one-candidate-per-guess family")
    s.set_defaults(func=cmd_solve_structured)

    s = sub.add_parser("reduce", help="build a hardness gadget")
    s.add_argument("input", help="graph instance JSON (is) or JSON array of integers (partition kinds)")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--k", type=int, help="independent-set size (defaults to the instance's k)")
    s.add_argument("--roles", help="write the role map and metadata to this file")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("verify-certificate", help="build the prescribed profile for a certificate and check it")
    s.add_argument("input")
    s.add_argument("certificate", help="JSON array: independent-set vertices or subset indices")
    s.add_argument("--kind", choices=KINDS, required=True)
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_verify_certificate)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        _say(f"error: {exc}")
        return EXIT_BUDGET
    except (
        UsageError,
        InstanceParseError,
        GraphValidationError,
        ProfileError,
        InvalidCertificate,
        NotInClass,
        ValueError,
    ) as exc:
        _say(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
