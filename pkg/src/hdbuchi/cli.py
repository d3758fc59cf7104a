"""Command-line interface.

Exit codes: 0 success, 1 negative verdict of a check, 2 usage or input
error, 3 resource cap exceeded, 4 internal integrity failure.
"""

import argparse
import json
import logging
import sys
import time

from . import analysis
from .arena import (
    DEFAULT_ARENA_CAP,
    EVE,
    build_g1,
    build_joker,
    build_k_token,
    build_lookahead,
    build_simulation,
    build_sprint,
    build_stepahead,
)
from .automaton import (
    delay_k,
    is_deterministic,
    parse_automaton,
    reachable_pairs,
    require_buchi,
    serialize_automaton,
)
from .determinize import determinize_hd, normalize
from .errors import HDBuchiError, InputError, IntegrityError, NotHDError, ResourceLimitError
from .oracles import KINDS, GenSpec, bounded_lasso_equiv, gen
from .solver import solve_01, solve_02

log = logging.getLogger("hdbuchi")

OK, NEGATIVE, USAGE, RESOURCE, INTEGRITY = 0, 1, 2, 3, 4
GAMES = ("g1", "joker", "k-token", "simulation", "stepahead", "sprint", "lookahead", "joker-fixed", "hd-adam")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _load(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_automaton(data)


def _write(data, path):
    if path is None or path == "-":
        sys.stdout.write(data.decode() if isinstance(data, bytes) else data)
    else:
        with open(path, "wb") as fh:
            fh.write(data if isinstance(data, bytes) else data.encode())


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _state(A, name):
    if name not in A.state_index:
        raise InputError(f"unknown state {name!r}")
    return A.state_index[name]


def _letter_map(A, spec):
    letters = {}
    for item in filter(None, spec.split(",")):
        state, _, letter = item.partition("=")
        if letter not in A.letter_index:
            raise InputError(f"unknown letter {letter!r}")
        letters[_state(A, state)] = A.letter_index[letter]
    return letters


# --------------------------------------------------------------------------
# subcommands


def cmd_check_hd(args):
    A = _load(args.file)
    require_buchi(A)
    hd = analysis.is_hd_buchi(A)
    lines = ["HD" if hd else "not-HD"]
    payload = {"hd": hd}
    if args.witness:
        if hd:
            strat = analysis.joker_strategy(A)
            moves = [
                f"trans {A.states[t[0]]} {A.alphabet[t[1]]} {t[2]} {A.states[t[3]]}  # Adam at {A.states[q]}"
                for (p, a, q), t in sorted(strat.moves.items())
            ]
        else:
            from .determinize import _not_hd_certificate

            moves = [f"{v} -> {w}" for v, w in _not_hd_certificate(A).items()]
        lines += moves
        payload["witness"] = moves
    _emit(args, payload, "\n".join(lines))
    return OK if hd else NEGATIVE


def cmd_determinize(args):
    A = _load(args.file)
    try:
        D, trace = determinize_hd(A, verify=not args.no_verify)
    except NotHDError as exc:
        log.error("%s", exc)
        if args.json:
            print(json.dumps({"hd": False, "certificate": exc.certificate}, sort_keys=True))
        return NEGATIVE
    _write(serialize_automaton(D), args.output)
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump(trace.to_json(), fh, indent=2, sort_keys=True)
    if args.json and args.output not in (None, "-"):
        print(json.dumps({"states": D.n, "transitions": len(D.transitions), "iterations": trace.terminated_at}))
    return OK


def _fixed_strategy_game(args, A):
    start = time.perf_counter()
    if args.game == "joker-fixed":
        strategies = {"switch": analysis.switch_strategy, "stay": analysis.stay_strategy}
        eve_wins = analysis.verify_fixed_joker_strategy(A, strategies[args.strategy](A))
    else:
        if not args.letters:
            raise InputError("--letters is required for hd-adam")
        adam_wins = analysis.verify_adam_letter_strategy(A, _letter_map(A, args.letters))
        eve_wins = not adam_wins
    elapsed = (time.perf_counter() - start) * 1000
    winner = "Eve" if eve_wins else "Adam"
    payload = {"winner_initial": winner, "rank_initial": None, "vertices": None, "edges": None, "time_ms": elapsed}
    _emit(args, payload, winner)
    return OK


def cmd_solve_game(args):
    A = _load(args.file)
    if args.game in ("joker-fixed", "hd-adam"):
        return _fixed_strategy_game(args, A)
    B = _load(args.other) if args.other else A
    cap = args.cap or DEFAULT_ARENA_CAP
    start = time.perf_counter()
    game = args.game
    if game == "g1":
        G = build_g1(A, cap)
    elif game == "joker":
        G = build_joker(A, cap)
    elif game == "k-token":
        G = build_k_token(A, args.k, cap)
    elif game == "simulation":
        G = build_simulation(A, B, cap)
    elif game == "stepahead":
        G = build_stepahead(A, B, cap)
    elif game == "lookahead":
        G = build_lookahead(A, args.k, cap)
    else:
        p, q = A.initial, B.initial
        if args.pair:
            pn, _, qn = args.pair.partition(",")
            p, q = _state(A, pn), _state(B, qn)
        G = build_sprint(A, p, B, q, cap)
    S = solve_01(G) if game == "sprint" else solve_02(G)
    elapsed = (time.perf_counter() - start) * 1000
    if args.dump:
        _write(G.dump(), args.dump)
    winner = "Eve" if S.winner[G.initial] == EVE else "Adam"
    rank = S.rank[G.initial]
    payload = {
        "winner_initial": winner,
        "rank_initial": rank,
        "vertices": len(G.labels),
        "edges": len(G.edges),
        "time_ms": elapsed,
    }
    _emit(args, payload, f"{winner} rank={'top' if rank is None else rank}")
    return OK


def cmd_make_good(args):
    A = _load(args.file)
    _write(serialize_automaton(analysis.make_good(A)), args.output)
    return OK


def cmd_normalize(args):
    A = _load(args.file)
    good = analysis.goodness(A)
    if not good.is_good:
        raise InputError("normalize needs a good automaton (run make-good first)")
    H, trace = normalize(A)
    _write(serialize_automaton(H), args.output)
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump(trace.to_json(), fh, indent=2, sort_keys=True)
    return OK


def cmd_delay(args):
    A = _load(args.file)
    cap = args.cap or 10**6
    _write(serialize_automaton(delay_k(A, args.k, cap)), args.output)
    return OK


def cmd_gen(args):
    spec = GenSpec(
        args.kind,
        args.states,
        args.alphabet,
        copies=args.copies,
        density=args.density,
        accept_prob=args.accept_prob,
        seed=args.seed,
        sabotage=args.sabotage,
    )
    A, witness = gen(spec)
    _write(serialize_automaton(A), args.output)
    if args.witness:
        if witness is None:
            raise InputError(f"kind {args.kind} has no witness")
        _write(serialize_automaton(witness), args.witness)
    return OK


def cmd_verify_equiv(args):
    A, B = _load(args.a), _load(args.b)
    if A.alphabet != B.alphabet:
        raise InputError("alphabets differ")
    if args.method == "lasso":
        try:
            u, v = (int(x) for x in args.bound.split(","))
        except ValueError:
            raise InputError("--bound expects two integers 'u,v'") from None
        same, w = bounded_lasso_equiv(A, B, u, v)
        text = "equivalent (bounded)" if same else f"not-equivalent {w.format(A.alphabet)}"
        payload = {"equivalent": same, "exact": False, "counterexample": w.format(A.alphabet) if w else None}
    else:
        require_buchi(A, B)
        if not (analysis.is_hd_buchi(A) and analysis.is_hd_buchi(B)):
            raise InputError("exact-hd needs history-deterministic inputs")
        a_sim_b = solve_02(G := build_simulation(A, B)).eve_wins(G.initial)
        b_sim_a = solve_02(H := build_simulation(B, A)).eve_wins(H.initial)
        same = a_sim_b and b_sim_a
        text = "equivalent" if same else "not-equivalent"
        payload = {"equivalent": same, "exact": True, "counterexample": None}
    _emit(args, payload, text)
    return OK if same else NEGATIVE


def cmd_stats(args):
    out = {}
    for path in args.files:
        A = _load(path)
        out[path] = {
            "states": A.n,
            "letters": len(A.alphabet),
            "transitions": len(A.transitions),
            "index": [A.lo, A.hi],
            "deterministic": is_deterministic(A),
            "reachable_pairs": len(reachable_pairs(A)),
        }
    if args.smoke or args.plot:
        from .report import complexity_smoke, growth_summary, plot_timings

        sizes = tuple(int(x) for x in args.sizes.split(","))
        rows = complexity_smoke(sizes, seeds=args.samples, base_seed=args.seed)
        summary = growth_summary(rows)
        out["complexity"] = {
            "rows": [{"n": r.n, "transitions": r.transitions, "seconds": r.seconds} for r in rows],
            **summary,
        }
        if args.plot:
            plot_timings(rows, args.plot)
    if args.json:
        print(json.dumps(out, sort_keys=True))
    else:
        for key, val in out.items():
            if key == "complexity":
                for r in val["rows"]:
                    print(f"n={r['n']:<4} |Delta|={r['transitions']:<6} {r['seconds'] * 1000:9.2f} ms")
                print("doubling ratios: " + ", ".join(f"{x:.1f}" for x in val["doubling_ratio"]))
            else:
                print(key + ": " + ", ".join(f"{k}={v}" for k, v in val.items()))
    if "complexity" in out and not out["complexity"]["polynomial"]:
        return NEGATIVE
    return OK


# --------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="random seed")
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS, help="resource cap (vertices/states)")

    parser = _Parser(prog="hdbuchi", description=__doc__.splitlines()[0], parents=[common])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check-hd", parents=[common], help="decide history-determinism of a Büchi automaton")
    p.add_argument("file")
    p.add_argument("--witness", action="store_true", help="print the winning side's positional strategy")
    p.set_defaults(func=cmd_check_hd)

    p = sub.add_parser("determinize", parents=[common], help="determinise an HD Büchi automaton")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--trace")
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_determinize)

    p = sub.add_parser("solve-game", parents=[common], help="build and solve one game arena")
    p.add_argument("file")
    p.add_argument("other", nargs="?", help="second automaton (simulation, stepahead, sprint)")
    p.add_argument("--game", choices=GAMES, default="g1")
    p.add_argument("--k", type=int, default=2, help="tokens or lookahead depth")
    p.add_argument("--pair", help="sprint start states 'p,q'")
    p.add_argument("--strategy", choices=("switch", "stay"), default="switch")
    p.add_argument("--letters", help="Adam's letter per Eve state, e.g. p=a,q=b")
    p.add_argument("--dump", help="write the arena dump to this path ('-' for stdout)")
    p.set_defaults(func=cmd_solve_game)

    for name, func, helptext in (
        ("make-good", cmd_make_good, "restrict to a Joker-winning strategy's transitions"),
        ("normalize", cmd_normalize, "rank-guided pruning and promotion"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("file")
        p.add_argument("-o", "--output")
        if name == "normalize":
            p.add_argument("--trace")
        p.set_defaults(func=func)

    p = sub.add_parser("delay", parents=[common], help="k-fold delay construction")
    p.add_argument("file")
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_delay)

    p = sub.add_parser("gen", parents=[common], help="generate a random automaton")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--states", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--copies", type=int, default=2)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--accept-prob", type=float, default=0.5)
    p.add_argument("--sabotage", action="store_true")
    p.add_argument("-o", "--output")
    p.add_argument("--witness")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify-equiv", parents=[common], help="compare the languages of two automata")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--method", choices=("exact-hd", "lasso"), default="lasso")
    p.add_argument("--bound", default="4,4")
    p.set_defaults(func=cmd_verify_equiv)

    p = sub.add_parser("stats", parents=[common], help="automaton statistics and the HD-check timing smoke test")
    p.add_argument("files", nargs="*")
    p.add_argument("--smoke", action="store_true", help="time the HD check on universal automata")
    p.add_argument("--sizes", default="4,8,16")
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--plot", help="render the timing figure to this file")
    p.set_defaults(func=cmd_stats)
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"hdbuchi: error: {exc}", file=sys.stderr)
        return USAGE
    except SystemExit as exc:  # --help
        return exc.code or OK
    for name, default in (("json", False), ("seed", 0), ("cap", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="hdbuchi: %(message)s", force=True)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        log.error("resource limit: %s", exc)
        return RESOURCE
    except IntegrityError as exc:
        log.error("integrity failure: %s", exc)
        return INTEGRITY
    except HDBuchiError as exc:
        log.error("%s", exc)
        return USAGE


def main():
    sys.exit(run())
