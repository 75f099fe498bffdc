"""Command-line front end.  Every command prints one JSON document (or JSON
lines for ``enumerate``) with sorted keys, so output is byte-stable."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .bounds import ALPHA, ALPHA_BRUTEFORCE_MAX_N, alpha, alpha_bruteforce, hadamard_bound, within_hadamard
from .enumeration import enumerate_monotone
from .game import (
    GameError,
    HypothesisError,
    ScopeError,
    SimpleGame,
    TradingTransform,
    check_eq2,
    coalition,
    game_from_json,
    maximal_losing,
    members,
    minimal_winning,
    null_players,
    passers,
    verify_trading_transform,
)
from .integer_repr import (
    OBJECTIVES,
    MAXMIN_EXPECTED,
    NotWeightedError,
    integer_representation,
    minimum_representation,
)
from .rough import decide_rough, is_rough_representation
from .rounding import f_bound_check, f_rows, round_game
from .weightedness import Weighted, decide_weighted

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_SCOPE = 4


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def _jobs(n) -> int:
    return n if n else (os.cpu_count() or 1)


def pmap(fn, items, jobs: int):
    """Ordered map, in worker processes when ``jobs > 1``."""
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=64))


def read_document(args) -> dict:
    if args.game is not None:
        text = args.game
    elif args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        with open(args.input) as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise GameError(f"invalid JSON: {e}") from None
    if not isinstance(data, dict):
        raise GameError("input must be a JSON object")
    return data


def read_game(args) -> SimpleGame:
    data = read_document(args)
    return game_from_json(data.get("game", data))


def _mask(c, n) -> int:
    if not isinstance(c, list) or any(not isinstance(p, int) or not 1 <= p <= n for p in c):
        raise GameError(f"bad coalition {c!r}")
    return coalition(c)


def _parse_number(x) -> Fraction:
    try:
        return Fraction(x)
    except (TypeError, ValueError):
        raise GameError(f"bad number {x!r}") from None


def verify_document(doc: dict) -> dict:
    """Re-check a verdict emitted by an earlier run against its game."""
    if "game" not in doc:
        raise GameError("verification needs the 'game' field")
    g = game_from_json(doc["game"])
    verdict = doc.get("verdict")
    n = g.n
    if verdict is None and "lambda_rounded" in doc:
        ok = True
        for key in ("n_scaled", "lambda_rounded"):
            part = doc[key]
            if len(part.get("w", ())) != n:
                raise GameError(f"'{key}' needs an n-long 'w'")
            ok = ok and check_eq2(g, _parse_number(part["q"]), [_parse_number(x) for x in part["w"]])
        return {"verdict": "rounded", "verified": bool(ok)}
    if verdict in ("non_weighted", "not_rough"):
        try:
            t = TradingTransform(
                tuple(_mask(c, n) for c in doc["X"]), tuple(_mask(c, n) for c in doc["Y"])
            )
        except KeyError as e:
            raise GameError(f"certificate lacks {e}") from None
        ok = verify_trading_transform(g, t) and t.size == doc.get("size", t.size)
        if verdict == "not_rough":
            ok = ok and g.full in t.xs and 0 in t.ys
    elif verdict in ("weighted", "roughly_weighted", "represented"):
        if "q" not in doc or "w" not in doc or len(doc["w"]) != n:
            raise GameError("representation needs 'q' and an n-long 'w'")
        q = _parse_number(doc["q"])
        w = [_parse_number(x) for x in doc["w"]]
        if verdict == "roughly_weighted":
            ok = is_rough_representation(g, q, w)
        else:
            ok = check_eq2(g, q, w)
    else:
        raise GameError(f"nothing to verify for verdict {verdict!r}")
    return {"verdict": verdict, "verified": bool(ok)}


# --- commands ---


def cmd_analyze(args) -> dict:
    g = read_game(args)
    return {
        "game": g.to_json(),
        "monotone": g.is_monotone,
        "empty_losing": g.has_empty_losing,
        "grand_winning": g.has_grand_winning,
        "minimal_winning": [list(members(s)) for s in minimal_winning(g)],
        "maximal_losing": [list(members(s)) for s in maximal_losing(g)],
        "passers": passers(g),
        "null_players": null_players(g),
    }


def cmd_certify(args) -> dict:
    g = read_game(args)
    out = decide_weighted(g).to_json()
    out["game"] = g.to_json()
    return out


def cmd_represent(args) -> dict:
    g = read_game(args)
    verdict = decide_weighted(g)
    if not isinstance(verdict, Weighted):
        out = verdict.to_json()
        out["game"] = g.to_json()
        return out
    if args.objective:
        rep = minimum_representation(g, args.objective, override=args.override)
        out = {"verdict": "represented", "q": rep.q, "w": list(rep.w), "objective": args.objective}
    else:
        rep = integer_representation(g)
        out = {"verdict": "represented", "q": rep.q, "w": list(rep.w), "det_abs": rep.det_abs}
        out["bounds"] = {k: {"value": v, "bound": b, "ok": ok} for k, (v, b, ok) in rep.bound_report().items()}
    out["game"] = g.to_json()
    return out


def cmd_round(args) -> dict:
    g = read_game(args)
    try:
        out = round_game(g)
    except NotWeightedError:
        out = decide_weighted(g).to_json()
    out["game"] = g.to_json()
    return out


def cmd_rough(args) -> dict:
    g = read_game(args)
    out = decide_rough(g).to_json()
    out["game"] = g.to_json()
    return out


def _enumerate_record(item):
    g, objective = item
    rec = {"game": g.to_json()}
    verdict = decide_weighted(g)
    rec["weighted"] = isinstance(verdict, Weighted)
    if objective and rec["weighted"]:
        rep = minimum_representation(g, objective, override=True)
        rec["representation"] = rep.to_json()
    return rec


def cmd_enumerate(args):
    if args.objective and not (args.require_empty_losing and args.require_grand_winning):
        raise HypothesisError("--objective needs --require-empty-losing and --require-grand-winning")
    sizes = [args.n] if args.n else range(1, args.max_n + 1)
    items = []
    for n in sizes:
        for g in enumerate_monotone(
            n,
            require_empty_losing=args.require_empty_losing,
            require_grand_winning=args.require_grand_winning,
            no_null_players=args.no_null_players,
            canonical=args.canonical,
            override=args.override,
        ):
            items.append((g, args.objective))
    for rec in pmap(_enumerate_record, items, _jobs(args.jobs)):
        if args.weighted_only and not rec["weighted"]:
            continue
        yield rec


def _table_values(g: SimpleGame):
    if not isinstance(decide_weighted(g), Weighted):
        return None
    return {o: minimum_representation(g, o).value(o) for o in OBJECTIVES}


def table_rows(max_n: int, jobs: int = 1) -> list[dict]:
    if not 1 <= max_n <= 5:
        raise ScopeError("table reproduction limited to 1 <= n <= 5")
    rows = []
    for n in range(1, max_n + 1):
        games = list(enumerate_monotone(n, require_empty_losing=True, require_grand_winning=True))
        values = [v for v in pmap(_table_values, games, jobs) if v is not None]
        for o in OBJECTIVES:
            got = max(v[o] for v in values)
            want = MAXMIN_EXPECTED[o][n - 1]
            rows.append({"objective": o, "n": n, "computed": got, "expected": want,
                         "status": "PASS" if got == want else "FAIL"})
    return rows


def cmd_table(args) -> dict:
    rows = table_rows(args.max_n or 5, _jobs(args.jobs))
    return {"cells": rows, "all_pass": all(r["status"] == "PASS" for r in rows)}


def bounds_report(max_n: int = 11, brute_max: int = ALPHA_BRUTEFORCE_MAX_N) -> dict:
    if not 1 <= max_n < len(ALPHA):
        raise ScopeError(f"bounds report limited to 1 <= n <= {len(ALPHA) - 1}")
    rows = []
    for n in range(1, max_n + 1):
        br = hadamard_bound(n)
        row = {
            "n": n,
            "alpha": alpha(n),
            "hadamard": [str(br.lo), str(br.hi)],
            "hadamard_exact": br.exact,
            "within_hadamard": within_hadamard(alpha(n), n),
        }
        if n <= brute_max:
            row["alpha_bruteforce"] = alpha_bruteforce(n)
            row["source"] = "bruteforce"
        else:
            row["source"] = "table"
        rows.append(row)
    return {"rows": rows}


def cmd_bounds(args) -> dict:
    return bounds_report(args.max_n or 11)


def cmd_figure(args):
    check = f_bound_check()
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["x", "f"])
        for x, f in f_rows():
            w.writerow([f"{float(x):.6f}", f"{float(f):.12f}"])
    finally:
        if args.output:
            out.close()
    return check if args.output else None


COMMANDS = {
    "analyze": (cmd_analyze, "structural report of a game"),
    "certify": (cmd_certify, "weighted representation or trading-transform certificate"),
    "represent": (cmd_represent, "bounded integer representation"),
    "round": (cmd_round, "relaxation with n-scaled and lambda-rounded integer weights"),
    "rough": (cmd_rough, "rough representation or potent certificate"),
    "enumerate": (cmd_enumerate, "all monotone games as JSON lines"),
    "table": (cmd_table, "max-min statistics of minimum integer representations"),
    "bounds": (cmd_bounds, "maximal 0-1 determinants and Hadamard bounds"),
    "figure": (cmd_figure, "CSV of the averaging function f(x) plus its bound check"),
}

GAME_COMMANDS = ("analyze", "certify", "represent", "round", "rough")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="votecert", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_) in COMMANDS.items():
        s = sub.add_parser(name, help=help_)
        s.add_argument("--format", choices=["json"], default="json")
        s.add_argument("--jobs", type=int, default=0, help="worker processes (default: all cores)")
        s.add_argument("--override", action="store_true", help="lift exhaustive-search size caps")
        if name in GAME_COMMANDS:
            s.add_argument("--input", help="game JSON file, or - for stdin (default)")
            s.add_argument("--game", help="inline game JSON")
            s.add_argument("--verify", action="store_true",
                           help="re-check a verdict document, or self-check the fresh result")
        if name in ("represent", "enumerate"):
            s.add_argument("--objective", choices=OBJECTIVES)
        if name in ("enumerate", "table", "bounds"):
            s.add_argument("--max-n", type=int, default=None)
        if name == "enumerate":
            s.add_argument("--n", type=int, default=None, help="only this player count")
            s.add_argument("--require-empty-losing", action="store_true")
            s.add_argument("--require-grand-winning", action="store_true")
            s.add_argument("--no-null-players", action="store_true")
            s.add_argument("--canonical", action="store_true")
            s.add_argument("--weighted-only", action="store_true")
        if name == "figure":
            s.add_argument("--output", help="CSV path (default: stdout)")
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    fn = COMMANDS[args.command][0]
    try:
        if args.command == "enumerate" and args.n is None and args.max_n is None:
            args.max_n = 4
        if getattr(args, "verify", False):
            doc = read_document(args)
            if "verdict" in doc:
                result = verify_document(doc)
            else:
                result = fn(args_with_game(args, doc))
                result["verified"] = verify_document(result)["verified"]
            stdout.write(dumps(result) + "\n")
            return EXIT_OK if result["verified"] else EXIT_VERIFY_FAILED
        result = fn(args)
        if args.command == "enumerate":
            for rec in result:
                stdout.write(dumps(rec) + "\n")
        elif result is not None:
            stdout.write(dumps(result) + "\n")
        return EXIT_OK
    except HypothesisError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ScopeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCOPE
    except (GameError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def args_with_game(args, doc):
    ns = argparse.Namespace(**vars(args))
    ns.game = json.dumps(doc)
    ns.input = None
    return ns


def main() -> None:
    sys.exit(run())
