"""Command-line front end: a thin client of the analysis service.

By default requests run against an in-process instance of the FastAPI app;
pass --server URL to target a running instance instead. Exit codes:
0 success, 1 usage error, 2 computation error, 3 verification FAIL.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COMPUTE = 2
EXIT_FAIL = 3

COMMANDS = (
    "spectral",
    "count",
    "discrepancy",
    "catalan-check",
    "twist",
    "asymptotics",
    "figures",
    "serve",
)


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: D102 - argparse hook
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    prefix: list
    tail: int | None
    n_max: int
    bits: int | None
    digits: int
    out: str | None
    server: str | None
    names: list | None
    host: str = "127.0.0.1"
    port: int = 8571


def _parse_prefix(text: str) -> list:
    if not text.strip():
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise UsageError(f"--prefix must be comma-separated integers, got {text!r}")


def parse_config(argv) -> RunConfig:
    parser = _Parser(prog="subdisc", description=__doc__)
    sub = parser.add_subparsers(dest="command")
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name != "serve":
            p.add_argument("--prefix", type=str, default=None)
            p.add_argument("--tail", type=int, default=None)
            p.add_argument("--n", type=int, default=None, dest="n_max")
            p.add_argument("--bits", type=int, default=None)
            p.add_argument("--digits", type=int, default=None)
            p.add_argument("--out", type=str, default=None)
            p.add_argument("--config", type=str, default=None)
            p.add_argument("--server", type=str, default=None)
        if name == "figures":
            p.add_argument("--names", type=str, default=None)
        if name == "serve":
            p.add_argument("--host", type=str, default="127.0.0.1")
            p.add_argument("--port", type=int, default=8571)
    args = parser.parse_args(argv)
    if not args.command:
        raise UsageError(f"missing command; choose from {', '.join(COMMANDS)}")
    if args.command == "serve":
        return RunConfig("serve", [], None, 200, None, 30, None, None, None,
                         host=args.host, port=args.port)

    file_cfg = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as handle:
                file_cfg = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file {args.config}: {exc}")
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")

    def pick(flag, key, default):
        if flag is not None:
            return flag
        return file_cfg.get(key, default)

    raw_prefix = pick(args.prefix, "prefix", [])
    prefix = _parse_prefix(raw_prefix) if isinstance(raw_prefix, str) else list(raw_prefix)
    tail = pick(args.tail, "tail", None)
    n_max = pick(args.n_max, "n_max", 200)
    bits = pick(args.bits, "bits", None)
    digits = pick(args.digits, "digits", 30)
    if digits < 6:
        raise UsageError("digits must be >= 6")
    if n_max < 0:
        raise UsageError("n must be non-negative")
    if args.command != "figures" and tail is None:
        raise UsageError("--tail is required (or provide it in --config)")
    names = None
    if args.command == "figures" and getattr(args, "names", None):
        names = [tok.strip() for tok in args.names.split(",") if tok.strip()]
    return RunConfig(args.command, prefix, tail, int(n_max), bits, int(digits),
                     pick(args.out, "out", None), args.server, names)


def _post(cfg: RunConfig, path: str, payload: dict):
    import httpx

    if cfg.server:
        with httpx.Client(base_url=cfg.server.rstrip("/"), timeout=None) as client:
            resp = client.post(path, json=payload)
    else:
        import asyncio

        from .service.app import create_app

        async def _go():
            transport = httpx.ASGITransport(app=create_app())
            async with httpx.AsyncClient(
                transport=transport, base_url="http://service", timeout=None
            ) as client:
                return await client.post(path, json=payload)

        resp = asyncio.run(_go())
    if resp.status_code in (400, 422):
        raise UsageError(str(resp.json().get("detail", resp.text)))
    if resp.status_code != 200:
        detail = resp.json().get("detail", resp.text) if resp.text else resp.text
        raise RuntimeError(f"computation failed: {detail}")
    return resp.json()


def _sequence_payload(cfg: RunConfig) -> dict:
    return {"prefix": cfg.prefix, "tail": cfg.tail}


def _cmd_spectral(cfg: RunConfig) -> int:
    payload = {"sequence": _sequence_payload(cfg), "digits": cfg.digits}
    if cfg.bits is not None:
        payload["bits"] = cfg.bits
    data = _post(cfg, "/api/spectral", payload)
    print(f"sequence {data['sequence']}")
    for key in ("P", "m_mu", "Q"):
        print(f"{key} = {data[key]['text']}")
    print(f"mu = {data['mu']}")
    print(f"lambda = {data['lam']}")
    print("lengths ell([0..k]) = " + ", ".join(data["lengths"]))
    print(f"tail form: ell([j]) = ({data['length_alpha']}) * mu^j + ({data['length_const']}) for j >= k")
    print(f"avg length = {data['avg_length']}")
    print(f"density = {data['density']}")
    print("roots:")
    for root in data["roots"]:
        print(
            f"  {root['kind']}: mu* = {root['mu_star']}, lambda* = {root['lambda_star']}, "
            f"multiplicity {root['multiplicity']}, |mu*|^2 = {root['modulus_sq']} "
            f"(factor {root['factor']['text']})"
        )
    return EXIT_OK


def _cmd_count(cfg: RunConfig) -> int:
    data = _post(cfg, "/api/count", {"sequence": _sequence_payload(cfg), "n_max": cfg.n_max})
    print(f"sequence {data['sequence']}")
    print("n,count")
    for n, c in enumerate(data["counts"]):
        print(f"{n},{c}")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as handle:
            handle.write("n,value\n")
            for n, c in enumerate(data["counts"]):
                handle.write(f"{n},{c}\n")
    return EXIT_OK


def _cmd_discrepancy(cfg: RunConfig) -> int:
    payload = {
        "sequence": _sequence_payload(cfg),
        "n_max": cfg.n_max,
        "digits": cfg.digits,
    }
    if cfg.bits is not None:
        payload["bits"] = cfg.bits
    data = _post(cfg, "/api/discrepancy", payload)
    print(f"sequence {data['sequence']} at {data['bits']} bits")
    print(f"density = {data['density']}; lambda = {data['lam']}")
    print(f"|d(n)|/lambda^n monotonically decreasing from n = {data['monotone_from']}")
    print("n,count,d_midpoint,d_radius")
    for row in data["rows"]:
        print(f"{row['n']},{row['count']},{row['midpoint']},{row['radius']}")
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as handle:
            handle.write("n,value\n")
            for row in data["rows"]:
                handle.write(f"{row['n']},{row['midpoint']}\n")
    return EXIT_OK


def _cmd_catalan_check(cfg: RunConfig) -> int:
    data = _post(cfg, "/api/catalan-check", {"sequence": _sequence_payload(cfg), "n_max": cfg.n_max})
    print(f"sequence {data['sequence']}: checked n <= {data['checked']}")
    print(data["detail"])
    if data["first_mismatch"]:
        print(f"first mismatch: {data['first_mismatch']}")
    print("PASS" if data["passed"] else "FAIL")
    return EXIT_OK if data["passed"] else EXIT_FAIL


def _cmd_twist(cfg: RunConfig) -> int:
    data = _post(cfg, "/api/twist", {"sequence": _sequence_payload(cfg), "n_max": cfg.n_max})
    print(f"sequence {data['sequence']}")
    xa = data["x_a"]
    entries = ", ".join(xa["prefix"] + [xa["tail"], xa["tail"]])
    print(f"x_a = ({entries}, ...)")
    print(f"R = {data['R']['text']}")
    print(f"Q = {data['Q']['text']}")
    print(f"g = {data['g']['text']}")
    print(f"alpha = {tuple(data['alpha'])}, beta = {tuple(data['beta'])}, q = {data['q']}")
    print(f"recurrence verified for n <= {data['verified_to']}: " + ("PASS" if data["passed"] else "FAIL"))
    print(data["bde_report"])
    return EXIT_OK if data["passed"] else EXIT_FAIL


def _cmd_asymptotics(cfg: RunConfig) -> int:
    payload = {"sequence": _sequence_payload(cfg), "n_max": cfg.n_max}
    data = _post(cfg, "/api/asymptotics", payload)
    print(f"sequence {data['sequence']}, n <= {data['n_max']}")
    lead = data["leading"]
    print(f"leading term: ({lead['coefficient_estimate']}) * ({lead['base']})^n")
    for term in data["terms"]:
        snapped = f" ~ {term['snapped']}" if term["snapped"] else ""
        print(
            f"estimated term: base {term['base']}, coefficient "
            f"{term['coefficient_estimate']} +/- {term['coefficient_spread']}{snapped}"
        )
    for fit in data["fits"]:
        print(
            f"fit ({fit['parity']}): residual ~ 2^n / n^p with p = {fit['exponent']:.3f} "
            f"on window {tuple(fit['window'])} ({fit['n_points']} points, "
            f"spread {fit['residual_of_fit']:.3f})"
        )
    for note in data["notes"]:
        print(f"note: {note}")
    return EXIT_OK


def _cmd_figures(cfg: RunConfig) -> int:
    payload = {"n_max": cfg.n_max, "digits": cfg.digits}
    if cfg.names:
        payload["names"] = cfg.names
    data = _post(cfg, "/api/figures", payload)
    out_dir = cfg.out or "figures"
    os.makedirs(out_dir, exist_ok=True)
    for fig in data["figures"]:
        path = os.path.join(out_dir, f"{fig['name']}.csv")
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(fig["csv"])
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_serve(cfg: RunConfig) -> int:
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=cfg.host, port=cfg.port)
    return EXIT_OK


_DISPATCH = {
    "spectral": _cmd_spectral,
    "count": _cmd_count,
    "discrepancy": _cmd_discrepancy,
    "catalan-check": _cmd_catalan_check,
    "twist": _cmd_twist,
    "asymptotics": _cmd_asymptotics,
    "figures": _cmd_figures,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv if argv is not None else sys.argv[1:])
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _DISPATCH[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - map everything else to exit 2
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
