"""Command-line client for the service.

All work happens in the HTTP app; by default the CLI talks to an embedded
in-process instance, and ``--server URL`` points it at a running one
instead.  ``zddel serve`` starts such a server.

Exit codes: 0 success, 1 validation or usage error, 2 when a variant
aborted on the node budget (the remaining columns are still written).
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from .bench import VARIANTS

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_ABORTED = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


def _client(server: Optional[str]):
    if server:
        import httpx

        return httpx.Client(base_url=server, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app)


def _variant_list(text: str) -> list[str]:
    return [part for part in text.split(",") if part]


def build_parser() -> _Parser:
    parser = _Parser(prog="zddel", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--server",
        metavar="URL",
        default=None,
        help="base URL of a running service (default: run in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    bench = sub.add_parser("bench", help="measure node counts and write a .dat table")
    bench_sub = bench.add_subparsers(dest="scenario", required=True)

    def add_common(p):
        p.add_argument("--out", metavar="FILE", required=False, default=None,
                       help="output .dat path (default: print to stdout)")
        p.add_argument("--variants", type=_variant_list, default=list(VARIANTS),
                       metavar="LIST", help="comma-separated subset of "
                       + ",".join(VARIANTS))
        p.add_argument("--convert-via-t0", action="store_true",
                       help="also rebuild T1/E0/E1 counts from T0 diagrams "
                            "by leaf/edge flips and cross-check them")
        p.add_argument("--node-cap", type=int, default=None,
                       help="per-manager node budget (env ZDDEL_NODE_CAP)")

    mc = bench_sub.add_parser("mc", help="muddy children sweep")
    mc.add_argument("--n-from", type=int, default=5)
    mc.add_argument("--n-to", type=int, default=40)
    mc.add_argument("--step", type=int, default=5)
    mc.add_argument("--m", type=int, default=None,
                    help="number of muddy children (default: all of them)")
    add_common(mc)

    dc = bench_sub.add_parser("dc", help="dining cryptographers sweep")
    dc.add_argument("--n-list", default="3,5,7,9,11,13", metavar="LIST",
                    help="comma-separated odd sizes")
    add_common(dc)

    sap = bench_sub.add_parser("sap", help="sum-and-product sweep")
    sap.add_argument("--from", dest="bound_from", type=int, default=65)
    sap.add_argument("--to", dest="bound_to", type=int, default=100)
    sap.add_argument("--step", type=int, default=5)
    add_common(sap)

    check = sub.add_parser("check", help="evaluate the queries of a .kmodel file")
    check.add_argument("file", metavar="FILE.kmodel")
    check.add_argument("--rule", default="eq",
                       help="diagram variant: eq|bddc|t0|t1|e0|e1 (default eq)")
    check.add_argument("--node-cap", type=int, default=None)

    solve = sub.add_parser("sap-solve", help="solve the sum-and-product dialogue")
    solve.add_argument("--bound", type=int, default=100)
    solve.add_argument("--rule", default="t0")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _fail(response) -> int:
    detail = None
    try:
        detail = response.json().get("detail")
    except Exception:
        pass
    print(f"error: {detail or response.text}", file=sys.stderr)
    return EXIT_ERROR


def _run_bench(client, path: str, payload: dict, out: Optional[str]) -> int:
    response = client.post(path, json=payload)
    if response.status_code != 200:
        return _fail(response)
    body = response.json()
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(body["dat"])
        print(f"wrote {body['rows']} rows to {out}")
    else:
        sys.stdout.write(body["dat"])
    if body["aborted"]:
        for item in body["aborted"]:
            print(f"aborted: {item}", file=sys.stderr)
        return EXIT_ABORTED
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    with _client(args.server) as client:
        if args.command == "bench":
            common = {
                "variants": args.variants,
                "convert_via_t0": args.convert_via_t0,
                "node_cap": args.node_cap,
            }
            if args.scenario == "mc":
                payload = {
                    "n_from": args.n_from,
                    "n_to": args.n_to,
                    "step": args.step,
                    "m": args.m,
                    **common,
                }
                return _run_bench(client, "/bench/mc", payload, args.out)
            if args.scenario == "dc":
                try:
                    n_list = [int(x) for x in args.n_list.split(",") if x]
                except ValueError:
                    print(f"error: bad --n-list {args.n_list!r}", file=sys.stderr)
                    return EXIT_ERROR
                payload = {"n_list": n_list, **common}
                return _run_bench(client, "/bench/dc", payload, args.out)
            payload = {
                "bound_from": args.bound_from,
                "bound_to": args.bound_to,
                "step": args.step,
                **common,
            }
            return _run_bench(client, "/bench/sap", payload, args.out)

        if args.command == "check":
            try:
                with open(args.file, "r", encoding="utf-8") as handle:
                    text = handle.read()
            except OSError as exc:
                print(f"error: {exc}", file=sys.stderr)
                return EXIT_ERROR
            response = client.post(
                "/check",
                json={"text": text, "rule": args.rule, "node_cap": args.node_cap},
            )
            if response.status_code != 200:
                return _fail(response)
            print(response.json()["report"])
            return EXIT_OK

        if args.command == "sap-solve":
            response = client.post(
                "/sap/solutions", json={"bound": args.bound, "rule": args.rule}
            )
            if response.status_code != 200:
                return _fail(response)
            solutions = response.json()["solutions"]
            if solutions:
                for x, y in solutions:
                    print(f"x={x} y={y}")
            else:
                print("no solution")
            return EXIT_OK

    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
