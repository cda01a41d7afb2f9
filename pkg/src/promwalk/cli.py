"""Command-line interface.

Thin client over the service handlers: each subcommand builds the same
request model the HTTP endpoint accepts, calls the handler in-process, and
formats the response as text (or JSON with --format json).

Exit codes: 0 success, 1 verification FAIL, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import PromwalkError
from . import service
from .poset import poset_from_json, poset_from_text


def load_poset_model(path: str) -> service.PosetModel:
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        p = poset_from_json(text)
    else:
        p = poset_from_text(text)
    return service.PosetModel(n=p.n, covers=sorted(p.covers))


def parse_x(arg: str | None) -> list[str] | None:
    if arg is None:
        return None
    return [part.strip() for part in arg.split(",")]


def fmt_word(word: list[int]) -> str:
    if all(v <= 9 for v in word):
        return "".join(str(v) for v in word)
    return " ".join(str(v) for v in word)


def fmt_real(v: float) -> str:
    return f"{v:.12g}"


def add_common(sub: argparse.ArgumentParser, with_x: bool = False) -> None:
    sub.add_argument("poset", help="poset file (text or JSON format)")
    sub.add_argument("--cap", type=int, default=5000)
    sub.add_argument("--format", choices=("tsv", "json"), default="tsv")
    if with_x:
        sub.add_argument("--x", help="rationals a1/b1,a2/b2,... (default uniform)")
        sub.add_argument("--normalize", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="promwalk", description="Promotion Markov chain on linear extensions"
    )
    subs = parser.add_subparsers(dest="verb", required=True)

    add_common(subs.add_parser("extensions", help="list linear extensions"))
    add_common(subs.add_parser("graph", help="promotion graph edges as TSV"))

    sp = subs.add_parser("matrix", help="symbolic or evaluated transition matrix")
    add_common(sp, with_x=True)
    sp.add_argument("--eval", dest="eval_x", help="alias for --x", default=None)

    sp = subs.add_parser("spectrum", help="predicted eigenvalues")
    add_common(sp)
    sp.add_argument("--engine", choices=service.ENGINES, default="pipeline")

    sp = subs.add_parser("stationary", help="exact stationary distribution")
    add_common(sp, with_x=True)

    sp = subs.add_parser("bounds", help="mixing time and convergence bounds")
    add_common(sp, with_x=True)
    sp.add_argument("--c", type=float, default=3.0)

    sp = subs.add_parser("simulate", help="Monte-Carlo walk, JSON report")
    add_common(sp, with_x=True)
    sp.add_argument("--steps", type=int, default=0)
    sp.add_argument("--trials", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)

    sp = subs.add_parser("verify", help="check a predicted spectrum exactly")
    add_common(sp)
    sp.add_argument("--engine", choices=service.ENGINES, default="pipeline")
    sp.add_argument("--samples", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)

    sp = subs.add_parser("explore", help="numeric spectrum search via the oracle")
    add_common(sp)
    sp.add_argument("--samples", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)

    sp = subs.add_parser("serve", help="run the HTTP service")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)

    return parser


def run(args: argparse.Namespace) -> int:
    if args.verb == "serve":
        import uvicorn

        uvicorn.run(service.app, host=args.host, port=args.port)
        return 0

    pm = load_poset_model(args.poset)

    if args.verb == "extensions":
        resp = service.handle_extensions(
            service.ExtensionsRequest(poset=pm, cap=args.cap)
        )
        if args.format == "json":
            print(resp.model_dump_json())
        else:
            for w in resp.extensions:
                print(fmt_word(w))
        return 0

    if args.verb == "graph":
        resp = service.handle_graph(service.GraphRequest(poset=pm, cap=args.cap))
        if args.format == "json":
            print(resp.model_dump_json())
        else:
            for src, tgt, k in resp.edges:
                print(f"{src}\t{tgt}\t{k}")
        return 0

    if args.verb == "matrix":
        x = parse_x(args.x or args.eval_x)
        resp = service.handle_matrix(
            service.MatrixRequest(
                poset=pm, x=x, normalize=args.normalize, cap=args.cap
            )
        )
        if args.format == "json":
            print(resp.model_dump_json())
        else:
            for row in resp.entries:
                print("\t".join(row))
        return 0

    if args.verb == "spectrum":
        resp = service.handle_spectrum(
            service.SpectrumRequest(poset=pm, engine=args.engine, cap=args.cap)
        )
        if args.format == "json":
            print(resp.model_dump_json())
        else:
            for e in resp.entries:
                print(f"{e.form}\t{e.multiplicity}")
        return 0

    if args.verb == "stationary":
        resp = service.handle_stationary(
            service.StationaryRequest(
                poset=pm, x=parse_x(args.x), normalize=args.normalize, cap=args.cap
            )
        )
        if args.format == "json":
            print(resp.model_dump_json())
        else:
            for e in resp.weights:
                print(f"{fmt_word(e.extension)}\t{e.weight}")
            print(f"Z_P = {resp.partition}")
        return 0

    if args.verb == "bounds":
        resp = service.handle_bounds(
            service.BoundsRequest(
                poset=pm, x=parse_x(args.x), normalize=args.normalize, c=args.c
            )
        )
        if args.format == "json":
            print(resp.model_dump_json())
        else:
            print(f"mixing_time = {fmt_real(resp.mixing_time)}")
            print(f"steps = {resp.steps}")
            print(f"tv_bound = {fmt_real(resp.tv_bound)}")
        return 0

    if args.verb == "simulate":
        resp = service.handle_simulate(
            service.SimulateRequest(
                poset=pm,
                x=parse_x(args.x),
                normalize=args.normalize,
                steps=args.steps,
                trials=args.trials,
                seed=args.seed,
                cap=args.cap,
            )
        )
        print(resp.model_dump_json())
        return 0

    if args.verb == "verify":
        resp = service.handle_verify(
            service.VerifyRequest(
                poset=pm,
                engine=args.engine,
                samples=args.samples,
                seed=args.seed,
                cap=args.cap,
            )
        )
        if args.format == "json":
            print(resp.model_dump_json())
        elif resp.verdict:
            print("PASS")
        else:
            si, ci, e, a = resp.first_discrepancy
            print(f"FAIL sample={si} coeff={ci} expected={e} got={a}")
        return 0 if resp.verdict else 1

    if args.verb == "explore":
        resp = service.handle_explore(
            service.ExploreRequest(
                poset=pm, samples=args.samples, seed=args.seed, cap=args.cap
            )
        )
        if args.format == "json":
            print(resp.model_dump_json())
        elif resp.entries is None:
            print("no match")
        else:
            for e in resp.entries:
                print(f"{e.form}\t{e.multiplicity}")
        return 0

    raise AssertionError(f"unhandled verb {args.verb}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return run(args)
    except PromwalkError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
