"""Command-line interface: expand, apply, verify, cache, bench.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 resource limit, window or cache error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import macdonald as mac
from . import partition as P
from .dsl import ParseError, format_operator, parse_operator, parse_symfunc, partition_text
from .operators import apply
from .plethysm import WindowError
from .symfunc import basis_tag, format_symfunc, symfunc_to_json
from .verify import SUITES, UnknownSuiteError, chain_consistent, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common(sp, max_degree=5):
    sp.add_argument("--max-degree", type=int, default=max_degree,
                    help=f"degree bound, at most {mac.HARD_CAP} (default {max_degree})")
    sp.add_argument("--k-max", type=int, default=5, help="largest k index (default 5)")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes for suite cases")
    sp.add_argument("--cache-path", default=None,
                    help="Ht cache file; QTSYM_CACHE is used when omitted")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qtsym", description="Exact symmetric-function operator engine.")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("expand", help="expand Ht_mu in a classical basis")
    sp.add_argument("--mu", required=True, help="partition, e.g. 2,1 (empty for the empty partition)")
    sp.add_argument("--basis", default="s", help="s|m|e|h|p or schur, monomial, ... (default s)")
    _common(sp)

    sp = sub.add_parser("apply", help="apply an operator expression to a symmetric function")
    sp.add_argument("--op", required=True, help='operator text, e.g. "nabla o mul(e[1]) o nabla^-1"')
    sp.add_argument("--to", required=True, help='input text, e.g. "s[2,1] + q*h[3]"')
    sp.add_argument("--basis", default="e", help="output basis (default e)")
    sp.add_argument("--coeff-z", type=int, default=None, help="extract this power of z")
    _common(sp)

    sp = sub.add_parser("verify", help="run identity suites")
    sp.add_argument("--suite", default="all", help="'all' or a comma-separated list of suite names")
    sp.add_argument("--timing", action="store_true", help="include wall time (breaks byte-determinism)")
    _common(sp)

    sp = sub.add_parser("cache", help="build or inspect the Ht cache file")
    sp.add_argument("--build", type=int, default=None, metavar="N", help="build all degrees <= N")
    sp.add_argument("--inspect", action="store_true", help="list cached degrees and checksums")
    _common(sp)

    sp = sub.add_parser("bench", help="time Gram-Schmidt per degree and suites (JSON)")
    sp.add_argument("--suite", default="all", help="'all', 'none' or a comma-separated list")
    _common(sp, max_degree=3)
    return ap


# ---------------------------------------------------------------------------


def _check_limits(args):
    if args.max_degree < 0 or args.k_max < 0:
        raise UsageError("--max-degree and --k-max must be nonnegative")
    if args.max_degree > mac.HARD_CAP:
        raise mac.CacheLimitError(f"--max-degree {args.max_degree} exceeds the hard cap {mac.HARD_CAP}")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")


def _cache_path(args, default_on=False):
    if args.cache_path:
        return args.cache_path
    if os.environ.get("QTSYM_CACHE"):
        return os.environ["QTSYM_CACHE"]
    return str(mac.default_cache_path()) if default_on else None


def _install_cache(args, default_on=False):
    path = _cache_path(args, default_on)
    cache = mac.HtCache(path=path)
    mac.set_cache(cache)
    return cache


def _persist(cache, before):
    if cache.path is not None and cache.cached_degrees() != before:
        # keep the file contiguous from degree 0
        cache.ensure(max(cache.cached_degrees()))
        cache.save()


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _basis(name):
    try:
        return basis_tag(name)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"unknown basis {name!r}") from exc


def cmd_expand(args) -> int:
    basis = _basis(args.basis)
    mu = partition_text(args.mu)
    if P.size(mu) > args.max_degree:
        raise mac.CacheLimitError(f"|mu| = {P.size(mu)} exceeds --max-degree {args.max_degree}")
    f = mac.macdonald_Ht(mu)
    if args.format == "json":
        _emit(json.dumps({"mu": list(mu), **symfunc_to_json(f, basis)}, sort_keys=True))
    else:
        _emit(format_symfunc(f, basis))
    return EXIT_OK


def cmd_apply(args) -> int:
    basis = _basis(args.basis)
    op = parse_operator(args.op)
    f = parse_symfunc(args.to).evaluate()
    out = apply(op, f, args.max_degree)
    if args.coeff_z is not None:
        out = out.z_coefficient(args.coeff_z)
    if args.format == "json":
        payload = {"op": format_operator(op), **symfunc_to_json(out, basis)}
        _emit(json.dumps(payload, sort_keys=True))
    else:
        _emit(format_symfunc(out, basis))
    return EXIT_OK


def _suite_names(text, allow_none=False):
    if text == "all":
        return list(SUITES)
    if allow_none and text == "none":
        return []
    names = [x.strip() for x in text.split(",") if x.strip()]
    bad = [x for x in names if x not in SUITES]
    if bad or not names:
        raise UnknownSuiteError(f"unknown suite {', '.join(bad) or text!r}; known: {', '.join(SUITES)}")
    return names


def _report_text(rep, show_ms=False) -> str:
    lines = [rep.summary()]
    for c in rep.failures():
        idx = " ".join(f"{k}={c[k]}" for k in ("k", "r") if k in c)
        w = c["witness"]
        lines.append(f"  mu={c['mu']} {idx} at {w['basis']}{w['lambda']} z^{w['z']}: "
                     f"lhs={w['lhs']} rhs={w['rhs']}" + (f" ({w['check']})" if "check" in w else ""))
    if show_ms and rep.ms is not None:
        lines.append(f"  {rep.ms} ms")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    names = _suite_names(args.suite)
    reports = {}
    for name in names:
        rep = run_suite(name, args.max_degree, args.k_max, jobs=args.jobs)
        reports[name] = rep
        if args.format == "json":
            _emit(json.dumps(rep.to_dict(args.timing), sort_keys=True))
        else:
            _emit(_report_text(rep, args.timing))
        sys.stdout.flush()
    ok = all(r.passed for r in reports.values())
    if not chain_consistent(reports):
        sys.stderr.write("qtsym: engine inconsistency: d-shift passed but main-theorem failed\n")
        ok = False
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cache(args) -> int:
    if args.build is None and not args.inspect:
        raise UsageError("cache needs --build N and/or --inspect")
    cache = _install_cache(args, default_on=True)
    if args.build is not None:
        if args.build < 0:
            raise UsageError("--build needs a nonnegative degree")
        if args.build > mac.HARD_CAP:
            raise mac.CacheLimitError(f"--build {args.build} exceeds the hard cap {mac.HARD_CAP}")
        cache.ensure(args.build)
        cache.save()
    if args.inspect:
        if not cache.path.exists():
            raise mac.CacheVersionError(f"no cache file at {cache.path}")
        data = mac.read_cache_file(cache.path)
        degrees = sorted(int(k) for k in data["degrees"])
        rows = [{"degree": n, "partitions": len(data["degrees"][str(n)]),
                 "sha256": data["checksums"][str(n)]} for n in degrees]
        if args.format == "json":
            _emit(json.dumps({"path": str(cache.path), "version": data["version"], "degrees": rows},
                             sort_keys=True))
        else:
            _emit(f"{cache.path} (version {data['version']})")
            for r in rows:
                _emit(f"degree {r['degree']}: {r['partitions']} partitions sha256={r['sha256']}")
    return EXIT_OK


def cmd_bench(args) -> int:
    names = _suite_names(args.suite, allow_none=True)
    gs = []
    for n in range(args.max_degree + 1):
        t0 = time.perf_counter()
        mac.build_degree(n)
        gs.append({"degree": n, "ms": int((time.perf_counter() - t0) * 1000)})
    suites = []
    for name in names:
        rep = run_suite(name, args.max_degree, args.k_max, jobs=args.jobs)
        suites.append({"suite": name, "pass": rep.passed, "cases": len(rep.cases), "ms": rep.ms})
    _emit(json.dumps({"max_degree": args.max_degree, "k_max": args.k_max,
                      "gram_schmidt": gs, "suites": suites}, sort_keys=True))
    return EXIT_OK


COMMANDS = {"expand": cmd_expand, "apply": cmd_apply, "verify": cmd_verify,
            "cache": cmd_cache, "bench": cmd_bench}


def _parse_diagnostic(exc: ParseError, source: str | None) -> str:
    msg = f"qtsym: parse error: {exc}"
    if source is not None:
        msg += f"\n  {source}\n  {' ' * (exc.offset - 1)}^"
    return msg


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_limits(args)
        if args.command == "cache":
            return cmd_cache(args)
        cache = _install_cache(args)
        before = cache.cached_degrees()
        code = COMMANDS[args.command](args)
        _persist(cache, before)
        return code
    except ParseError as exc:
        source = {"expand": getattr(args, "mu", None)}.get(args.command)
        if args.command == "apply":
            source = args.op if _fails(parse_operator, args.op) else args.to
        sys.stderr.write(_parse_diagnostic(exc, source) + "\n")
        return EXIT_USAGE
    except (UsageError, UnknownSuiteError) as exc:
        sys.stderr.write(f"qtsym: error: {exc.args[0] if exc.args else exc}\n")
        return EXIT_USAGE
    except (mac.CacheLimitError, mac.CacheVersionError, WindowError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"qtsym: limit: {exc}\n")
        return EXIT_RESOURCE
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        sys.stderr.write(f"qtsym: error: {exc}\n")
        return EXIT_USAGE


def _fails(fn, text) -> bool:
    try:
        fn(text)
    except ParseError:
        return True
    return False


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
