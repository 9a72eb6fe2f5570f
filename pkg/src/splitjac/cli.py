"""Command-line surface: admissibility tables, trace-triple search,
construction, independent verification, and zeta data.

Output is deterministic: keys are sorted, every mathematical integer is a
decimal string (immune to 64-bit readers), field elements are arrays of
base-p digit strings with the constant digit first, and files are written
atomically (temp file plus rename).

Exit codes: 0 success or Match, 1 verification mismatch, 2 requested
traces not consistent, 3 invalid mathematical input, 4 I/O, usage, or
format error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass

from . import ecurve
from .construct import (ConstructionCertificate, Genus3Cover,
                        InvalidCoverError, InvalidTracesError, NotConsistent,
                        TriplePlan, decide_consistency, enumerate_triples,
                        realize_plan)
from .ecurve import (CurveClass, EllipticModel, admissible_traces,
                     enumerate_classes, waterhouse_admissible,
                     waterhouse_clauses)
from .ff import Fel, FieldDesc, Poly, make_field, split_prime_power
from .zeta import claimed_char_poly, claimed_lpoly, expected_count, verify

SCHEMA = 1

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INCONSISTENT = 2
EXIT_BAD_INPUT = 3
EXIT_IO = 4


class CliError(Exception):
    """Carries the process exit code alongside the message."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    """Validated invocation: one command plus its resolved arguments."""
    command: str
    q: int
    traces: tuple[int, int, int] | None = None
    mode: str = "auto"
    relaxed: bool = False
    max_k: int | None = None
    fmt: str = "json"
    out: str | None = None
    jobs: int = 1
    cache_dir: str | None = None
    input_path: str | None = None


# ---------------------------------------------------------------- encoding

def _enc_fel(x: Fel) -> list[str]:
    return [str(d) for d in x.coeffs]


def _enc_poly(f: Poly) -> list[list[str]]:
    return [_enc_fel(c) for c in f.coeffs]


def _dec_int(v) -> int:
    if isinstance(v, bool):
        raise ValueError("expected an integer, got a boolean")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        return int(v, 10)
    raise ValueError(f"expected an integer, got {v!r}")


def _dec_fel(field: FieldDesc, digits) -> Fel:
    if not isinstance(digits, list) or not digits:
        raise ValueError("field element must be a non-empty digit array")
    return field([_dec_int(d) for d in digits])


def _dec_poly(field: FieldDesc, coeffs) -> Poly:
    if not isinstance(coeffs, list) or not coeffs:
        raise ValueError("polynomial must be a non-empty coefficient array")
    return Poly(field, [_dec_fel(field, c) for c in coeffs])


def _dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _dumps_line(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def _emit(text: str, out: str | None) -> None:
    """Write to stdout, or atomically to a file."""
    if out is None:
        sys.stdout.write(text)
        return
    target = os.path.abspath(out)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target), prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def certificate_to_doc(cert: ConstructionCertificate) -> dict:
    base = cert.cover.base
    return {
        "schema": SCHEMA,
        "kind": "certificate",
        "p": str(base.p),
        "r": str(base.n),
        "q": str(cert.q),
        "mode": cert.mode,
        "traces": [str(t) for t in cert.traces],
        "polys": [_enc_poly(f) for f in cert.cover.polys],
        "char_poly": [str(c) for c in claimed_char_poly(cert.q, cert.traces)],
        "lpoly": [str(c) for c in claimed_lpoly(cert.q, cert.traces).coeffs],
    }


def certificate_from_doc(doc) -> ConstructionCertificate:
    """Rebuild a certificate; ValueError means a malformed document."""
    if not isinstance(doc, dict):
        raise ValueError("certificate document must be a JSON object")
    if _dec_int(doc.get("schema", -1)) != SCHEMA:
        raise ValueError("unsupported schema version")
    if doc.get("kind") != "certificate":
        raise ValueError("document is not a certificate")
    p = _dec_int(doc["p"])
    r = _dec_int(doc["r"])
    q = _dec_int(doc["q"])
    if p ** r != q:
        raise ValueError("field does not match q")
    field = make_field(p, r)
    mode = doc["mode"]
    if mode not in ("weak", "strong"):
        raise ValueError(f"unknown mode {mode!r}")
    traces = tuple(_dec_int(t) for t in doc["traces"])
    if len(traces) != 3:
        raise ValueError("exactly three traces required")
    polys = doc["polys"]
    if not isinstance(polys, list) or len(polys) != 3:
        raise ValueError("exactly three polynomials required")
    models = []
    for coeffs in polys:
        try:
            models.append(EllipticModel(_dec_poly(field, coeffs)))
        except ValueError as exc:
            raise CliError(EXIT_BAD_INPUT, f"bad model: {exc}") from exc
    return ConstructionCertificate(q, mode, traces, Genus3Cover(*models))


# ------------------------------------------------------------- class cache

def _cache_path(cache_dir: str, q: int) -> str:
    return os.path.join(cache_dir, f"classes-q{q}.json")


def warm_class_cache(cache_dir: str, q: int) -> None:
    """Load the per-field class census from disk, or compute and store it.

    Files carry the schema version; anything unreadable or stale is
    recomputed and rewritten.
    """
    path = _cache_path(cache_dir, q)
    try:
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
        if _dec_int(doc.get("schema", -1)) != SCHEMA or doc.get("kind") != "classes":
            raise ValueError("stale cache")
        if _dec_int(doc["q"]) != q:
            raise ValueError("cache is for a different field")
        field = make_field(*split_prime_power(q))
        loaded = tuple(
            CurveClass(j=_dec_fel(field, row["j"]),
                       t=_dec_int(row["t"]),
                       two_torsion=_dec_int(row["two_torsion"]),
                       representative=EllipticModel(
                           _dec_poly(field, row["model"])))
            for row in doc["classes"])
        ecurve._CLASS_CACHE[q] = loaded
        return
    except (OSError, ValueError, KeyError, TypeError, json.JSONDecodeError):
        pass
    classes = enumerate_classes(q)
    doc = {
        "schema": SCHEMA,
        "kind": "classes",
        "q": str(q),
        "classes": [{"j": _enc_fel(c.j),
                     "t": str(c.t),
                     "two_torsion": str(c.two_torsion),
                     "model": _enc_poly(c.representative.f)}
                    for c in classes],
    }
    os.makedirs(cache_dir, exist_ok=True)
    _emit(_dumps(doc), path)


# ---------------------------------------------------------------- commands

def cmd_admissible(cfg: RunConfig) -> int:
    rows = [(t, waterhouse_clauses(cfg.q, t)) for t in admissible_traces(cfg.q)]
    if cfg.fmt == "tsv":
        lines = ["q\tt\tclauses"]
        lines += [f"{cfg.q}\t{t}\t{','.join(cl)}" for t, cl in rows]
        _emit("\n".join(lines) + "\n", cfg.out)
    else:
        doc = {
            "schema": SCHEMA,
            "kind": "admissible",
            "q": str(cfg.q),
            "traces": [{"t": str(t), "clauses": list(cl)} for t, cl in rows],
        }
        _emit(_dumps(doc), cfg.out)
    return EXIT_OK


def _witness_doc(plan: TriplePlan) -> dict:
    if plan.mode == "strong":
        return {"lambda1": _enc_fel(plan.lambda1),
                "lambda2": _enc_fel(plan.lambda2)}
    return {"p3": _enc_fel(plan.p3), "p4": _enc_fel(plan.p4)}


def _witness_cells(plan: TriplePlan) -> tuple[str, str]:
    if plan.mode == "strong":
        pair = (plan.lambda1, plan.lambda2)
    else:
        pair = (plan.p3, plan.p4)
    return tuple(",".join(_enc_fel(x)) for x in pair)


def cmd_enumerate_triples(cfg: RunConfig) -> int:
    found = []
    for label, combo in enumerate_triples(cfg.q, cfg.mode, cfg.relaxed):
        plan = decide_consistency(cfg.q, combo, label, cfg.relaxed)
        if isinstance(plan, NotConsistent):
            continue
        found.append((plan, realize_plan(plan)))
    if cfg.fmt == "tsv":
        lines = ["q\tt1\tt2\tt3\tmode\tw1\tw2"]
        for plan, _ in found:
            w1, w2 = _witness_cells(plan)
            t1, t2, t3 = plan.traces
            lines.append(f"{cfg.q}\t{t1}\t{t2}\t{t3}\t{plan.mode}\t{w1}\t{w2}")
        _emit("\n".join(lines) + "\n", cfg.out)
    else:
        chunks = []
        for plan, cert in found:
            chunks.append(_dumps_line({
                "schema": SCHEMA,
                "kind": "triple",
                "q": str(cfg.q),
                "mode": plan.mode,
                "traces": [str(t) for t in plan.traces],
                "witness": _witness_doc(plan),
                "polys": [_enc_poly(f) for f in cert.cover.polys],
            }))
        _emit("".join(chunks), cfg.out)
    return EXIT_OK


def cmd_construct(cfg: RunConfig) -> int:
    plan = decide_consistency(cfg.q, cfg.traces, cfg.mode, cfg.relaxed)
    if isinstance(plan, NotConsistent):
        print(f"not consistent: {plan.reason}", file=sys.stderr)
        return EXIT_INCONSISTENT
    cert = realize_plan(plan)
    doc = certificate_to_doc(cert)
    doc["witness"] = _witness_doc(plan)
    _emit(_dumps(doc), cfg.out)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.input_path is not None:
        if cfg.input_path == "-":
            raw = sys.stdin.read()
        else:
            try:
                with open(cfg.input_path, encoding="utf-8") as handle:
                    raw = handle.read()
            except OSError as exc:
                raise CliError(EXIT_IO, f"cannot read input: {exc}") from exc
        try:
            cert = certificate_from_doc(json.loads(raw))
        except (ValueError, KeyError, TypeError) as exc:
            raise CliError(EXIT_IO, f"malformed certificate: {exc}") from exc
    else:
        plan = decide_consistency(cfg.q, cfg.traces, cfg.mode, cfg.relaxed)
        if isinstance(plan, NotConsistent):
            print(f"not consistent: {plan.reason}", file=sys.stderr)
            return EXIT_INCONSISTENT
        cert = realize_plan(plan)
    try:
        report = verify(cert, max_k=cfg.max_k, jobs=cfg.jobs)
    except InvalidCoverError as exc:
        raise CliError(EXIT_BAD_INPUT, f"invalid cover: {exc}") from exc
    doc = {
        "schema": SCHEMA,
        "kind": "report",
        "verdict": report.verdict,
        "q": str(report.q),
        "traces": [str(t) for t in report.traces],
        "k_used": str(report.k_used),
        "counts": [str(n) for n in report.counts],
        "expected": [str(n) for n in report.expected],
        "claimed": [str(c) for c in report.claimed],
        "reconstructed": (None if report.reconstructed is None
                          else [str(c) for c in report.reconstructed]),
        "detail": report.detail,
    }
    _emit(_dumps(doc), cfg.out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_zeta(cfg: RunConfig) -> int:
    t1, t2, t3 = cfg.traces
    for t in cfg.traces:
        if not waterhouse_admissible(cfg.q, t):
            raise CliError(EXIT_BAD_INPUT,
                           f"trace {t} is not realizable over F_{cfg.q}")
    doc = {
        "schema": SCHEMA,
        "kind": "zeta",
        "q": str(cfg.q),
        "traces": [str(t) for t in cfg.traces],
        "char_poly": [str(c) for c in claimed_char_poly(cfg.q, cfg.traces)],
        "lpoly": [str(c) for c in claimed_lpoly(cfg.q, cfg.traces).coeffs],
        "counts": [str(expected_count(cfg.q, t1, t2, t3, k))
                   for k in range(1, 7)],
    }
    _emit(_dumps(doc), cfg.out)
    return EXIT_OK


_DISPATCH = {
    "admissible": cmd_admissible,
    "enumerate-triples": cmd_enumerate_triples,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "zeta": cmd_zeta,
}


# ------------------------------------------------------------------ parser

class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; our contract reserves 2 for
    NotConsistent, so usage problems become exit 4."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_IO, f"{self.prog}: error: {message}\n")


def _add_field_args(sub) -> None:
    sub.add_argument("--q", type=int, help="field size, an odd prime power")
    sub.add_argument("--p", type=int, help="characteristic (with --r)")
    sub.add_argument("--r", type=int, help="extension degree (with --p)")
    sub.add_argument("--cache-dir", help="directory for the per-field class census")
    sub.add_argument("--out", help="write output atomically to this path")


def _add_trace_args(sub) -> None:
    sub.add_argument("--t1", type=int)
    sub.add_argument("--t2", type=int)
    sub.add_argument("--t3", type=int)


def _add_mode_args(sub) -> None:
    sub.add_argument("--mode", choices=("weak", "strong", "auto"),
                     default="auto")
    sub.add_argument("--relaxed", action="store_true",
                     help="allow repeated traces")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="splitjac",
                     description="Genus-3 covers with split Jacobians: "
                                 "search, construction, verification")
    subs = parser.add_subparsers(dest="command", required=True,
                                 parser_class=_Parser)

    sub = subs.add_parser("admissible", help="table of realizable traces")
    _add_field_args(sub)
    sub.add_argument("--format", choices=("json", "tsv"), default="json")

    sub = subs.add_parser("enumerate-triples",
                          help="all consistent trace triples with witnesses")
    _add_field_args(sub)
    _add_mode_args(sub)
    sub.add_argument("--format", choices=("json", "tsv"), default="json")
    sub.add_argument("--jobs", type=int, default=1)

    sub = subs.add_parser("construct",
                          help="build a certified cover for given traces")
    _add_field_args(sub)
    _add_trace_args(sub)
    _add_mode_args(sub)
    sub.add_argument("--jobs", type=int, default=1)

    sub = subs.add_parser("verify",
                          help="independently verify a certificate")
    sub.add_argument("input", nargs="?",
                     help="certificate JSON path, or - for stdin")
    _add_field_args(sub)
    _add_trace_args(sub)
    _add_mode_args(sub)
    sub.add_argument("--max-k", type=int, default=None)
    sub.add_argument("--jobs", type=int, default=1)

    sub = subs.add_parser("zeta",
                          help="claimed zeta data for a trace triple")
    _add_field_args(sub)
    _add_trace_args(sub)

    return parser


def _resolve_q(ns) -> int:
    if ns.q is not None:
        if ns.p is not None or ns.r is not None:
            raise CliError(EXIT_IO, "--q excludes --p/--r")
        q = ns.q
    elif ns.p is not None:
        q = ns.p ** (ns.r if ns.r is not None else 1)
    else:
        raise CliError(EXIT_IO, "one of --q or --p is required")
    try:
        p, r = split_prime_power(q)
    except ValueError as exc:
        raise CliError(EXIT_BAD_INPUT, str(exc)) from exc
    if p == 2:
        raise CliError(EXIT_BAD_INPUT, "odd characteristic only")
    if r > 2:
        raise CliError(EXIT_BAD_INPUT,
                       "base fields are limited to degree at most 2")
    return q


def _resolve_traces(ns, required: bool) -> tuple[int, int, int] | None:
    given = (ns.t1, ns.t2, ns.t3)
    if all(t is None for t in given):
        if required:
            raise CliError(EXIT_IO, "--t1, --t2 and --t3 are required")
        return None
    if any(t is None for t in given):
        raise CliError(EXIT_IO, "provide all of --t1, --t2, --t3")
    return given


def build_config(ns) -> RunConfig:
    command = ns.command
    input_path = getattr(ns, "input", None)
    if command == "verify" and input_path is not None:
        if ns.q is not None or ns.p is not None or ns.t1 is not None:
            raise CliError(EXIT_IO,
                           "a certificate input excludes --q/--p and traces")
        q, traces = 0, None
    else:
        q = _resolve_q(ns)
        traces = None
        if hasattr(ns, "t1"):
            traces = _resolve_traces(ns, required=command in
                                     ("construct", "verify", "zeta"))
    jobs = getattr(ns, "jobs", 1)
    if jobs < 1:
        raise CliError(EXIT_IO, "--jobs must be at least 1")
    max_k = getattr(ns, "max_k", None)
    if max_k is not None and max_k < 1:
        raise CliError(EXIT_BAD_INPUT, "--max-k must be at least 1")
    return RunConfig(
        command=command,
        q=q,
        traces=traces,
        mode=getattr(ns, "mode", "auto"),
        relaxed=getattr(ns, "relaxed", False),
        max_k=max_k,
        fmt=getattr(ns, "format", "json"),
        out=ns.out if hasattr(ns, "out") else None,
        jobs=jobs,
        cache_dir=getattr(ns, "cache_dir", None),
        input_path=input_path,
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = build_config(ns)
        if cfg.cache_dir is not None and cfg.q:
            warm_class_cache(cfg.cache_dir, cfg.q)
        return _DISPATCH[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InvalidTracesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except InvalidCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
