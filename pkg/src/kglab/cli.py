"""Command-line front end: deterministic experiment sweeps with CSV/JSONL
output.

Subcommands: count, overlap, variance, gcdsum, cf, hausdorff, lemma3-sweep.
Every output file starts with a metadata line (tool version, resolved
config, RNG algorithm, scale, shell-count mode); identical configs produce
byte-identical bodies regardless of worker count.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__
from .cfrac import CFExpansion, cf_expand, cf_to_surd, convergents, make_liouville
from .counting import CountReport, check_precision_range, count_by_shell, make_report
from .fixedpoint import DEFAULT_SCALE_BITS, PrecisionError
from .lattice import LatticeVector, gcd_power_sum, gcd_power_sum_sweep, primorials
from .psifunc import (ApproxFunction, Clamp, PowerLaw, TablePsi, Window,
                      hausdorff_exponent, hausdorff_partial_sum)
from .rng import ALGORITHM_ID, RngStream, derive_seed
from .surd import QuadraticSurd
from .torus import (TorusSet1D, is_parallel, overlap_2d,
                    overlap_2d_grid_oracle, overlap_exact_1d,
                    overlap_sweep_oracle, parallel_overlap_bound)
from .variance import vanishing_bound_sweep, variance_full, variance_window
from .witness import NonLiouvilleWitness, WitnessFitFailure, fit_witness

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_PRECISION = 3

SHELL_COUNT_MODE = "enumerated-8q"
MAIN_TERM_NOTE = (
    "psi_exact uses the enumerated shell size 8q (16*sum q*psi); psi_paper "
    "uses the stated normalization 16*sum q*psi + 8*sum psi, i.e. shell "
    "size 8q+4; the two differ by 8*sum psi"
)
COUNT_DOMAIN_NOTE = "0 < |q| <= Q; the q = 0 vector is excluded"


class ConfigError(ValueError):
    pass


# -- spec-string parsing -------------------------------------------------------


def parse_gamma(spec: str):
    """'sqrt:2' | 'surd:a,b,r,d' | 'cf:a0[,pre...];per,...' | 'liouville:k'."""
    try:
        kind, _, rest = spec.partition(":")
        if kind == "sqrt":
            return QuadraticSurd.sqrt(int(rest))
        if kind == "surd":
            a, b, r, d = (int(x) for x in rest.split(","))
            return QuadraticSurd(a, b, r, d)
        if kind == "cf":
            head, _, per = rest.partition(";")
            head_vals = [int(x) for x in head.split(",")]
            period = tuple(int(x) for x in per.split(","))
            return cf_to_surd(CFExpansion(head_vals[0], tuple(head_vals[1:]),
                                          period))
        if kind == "liouville":
            return cf_to_surd(make_liouville(int(rest)))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad gamma spec {spec!r}: {exc}") from exc
    raise ConfigError(f"bad gamma spec {spec!r}")


def parse_psi(spec: str) -> ApproxFunction:
    """'pow:c0,a' | 'const:v' | 'table:path|k=v,...' | 'clamp:<inner>' |
    'window:lo,hi,<inner>' (inner specs nest)."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "pow":
            c0, a = rest.split(",")
            return PowerLaw(Fraction(c0), Fraction(a))
        if kind == "const":
            v = Fraction(rest)
            if v == 0:
                return TablePsi({})
            return PowerLaw(v, Fraction(0))
        if kind == "table":
            if "=" in rest:
                vals = {}
                for item in rest.split(","):
                    k, _, v = item.partition("=")
                    vals[int(k)] = Fraction(v)
                return TablePsi(vals)
            return TablePsi.from_csv(rest)
        if kind == "clamp":
            return Clamp(parse_psi(rest))
        if kind == "window":
            lo, hi, inner = rest.split(",", 2)
            return Window(parse_psi(inner), int(lo), int(hi))
    except (ValueError, OSError) as exc:
        raise ConfigError(f"bad psi spec {spec!r}: {exc}") from exc
    raise ConfigError(f"bad psi spec {spec!r}")


def parse_vec(spec: str) -> LatticeVector:
    try:
        a, b = (int(x) for x in spec.split(","))
        return LatticeVector(a, b)
    except ValueError as exc:
        raise ConfigError(f"bad vector spec {spec!r}: {exc}") from exc


def parse_set1d(spec: str) -> TorusSet1D:
    """'d=3,t=1/10,shift=1/12'."""
    fields = {}
    try:
        for item in spec.split(","):
            k, _, v = item.partition("=")
            fields[k.strip()] = v.strip()
        return TorusSet1D(int(fields["d"]), Fraction(fields.get("shift", "0")),
                          Fraction(fields["t"]))
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"bad 1-D set spec {spec!r}: {exc}") from exc


def parse_qlist(spec: str) -> list[int]:
    try:
        qs = [int(x) for x in spec.split(",")]
    except ValueError as exc:
        raise ConfigError(f"bad Q list {spec!r}") from exc
    if not qs or any(q < 1 for q in qs):
        raise ConfigError(f"Q values must be >= 1 (got {spec!r})")
    return sorted(set(qs))


# -- config file -----------------------------------------------------------------


def load_config_file(path: str) -> dict[str, str]:
    out = {}
    try:
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"bad config line {line!r}")
                k, _, v = line.partition("=")
                out[k.strip().replace("-", "_")] = v.strip()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return out


def apply_config(args: argparse.Namespace, parser_defaults: dict) -> None:
    """Fill None-valued args from --config file, then from defaults."""
    file_cfg = load_config_file(args.config) if getattr(args, "config", None) else {}
    for key, default in parser_defaults.items():
        if getattr(args, key, None) is None:
            if key in file_cfg:
                setattr(args, key, file_cfg[key])
            else:
                setattr(args, key, default)


# -- output ------------------------------------------------------------------------


def config_echo(args: argparse.Namespace, keys: list[str]) -> dict:
    return {k: getattr(args, k) for k in keys}


def metadata(args: argparse.Namespace, keys: list[str], **extra) -> dict:
    md = {
        "tool": "kglab",
        "version": __version__,
        "command": args.command,
        "config": config_echo(args, keys),
        "rng_algorithm": ALGORITHM_ID,
        "scale_bits": getattr(args, "scale_bits", None),
        "shell_count_mode": SHELL_COUNT_MODE,
        "main_term_note": MAIN_TERM_NOTE,
        "count_domain": COUNT_DOMAIN_NOTE,
    }
    md.update(extra)
    return md


class Output:
    """Single collector writing CSV or JSONL with a metadata head line."""

    def __init__(self, path: str, fmt: str, meta: dict, columns=None) -> None:
        self.fmt = fmt
        self.buf = io.StringIO()
        self.path = path
        if fmt == "csv":
            self.writer = csv.writer(self.buf, lineterminator="\r\n")
            self.buf.write("# " + json.dumps(meta, sort_keys=True,
                                             default=str) + "\r\n")
            if columns:
                self.writer.writerow(columns)
        elif fmt == "jsonl":
            self.buf.write(json.dumps({"meta": meta}, sort_keys=True,
                                      default=str) + "\n")
        else:
            raise ConfigError(f"unknown format {fmt!r}")

    def row(self, values=None, obj=None) -> None:
        if self.fmt == "csv":
            self.writer.writerow(values)
        else:
            self.buf.write(json.dumps(obj, sort_keys=True, default=str) + "\n")

    def finish(self) -> None:
        data = self.buf.getvalue()
        if self.path == "-":
            sys.stdout.write(data)
        else:
            with open(self.path, "w", newline="") as fh:
                fh.write(data)


# -- count ------------------------------------------------------------------------


# workers is execution machinery, not experiment config: results must be
# byte-identical across pool sizes, so it stays out of the metadata echo
_COUNT_KEYS = ["gamma", "psi", "Q", "trials", "seed", "delta_log",
               "scale_bits", "format"]


def _count_trial(payload) -> tuple[int, list[int]]:
    (gamma_spec, psi_spec, q_max, scale_bits, base_seed, trial, backend) = payload
    gamma = parse_gamma(gamma_spec)
    psi = parse_psi(psi_spec)
    seed = derive_seed(base_seed, trial)
    rng = RngStream(seed)
    alpha = rng.sample_torus_point(scale_bits)
    counts = count_by_shell(alpha, q_max, gamma, psi, scale_bits, backend)
    return trial, [int(x) for x in counts]


def _config_hash(args: argparse.Namespace, keys: list[str]) -> str:
    blob = json.dumps(config_echo(args, keys), sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _load_checkpoint(path: str, want_hash: str) -> dict[int, list[int]]:
    done: dict[int, list[int]] = {}
    if not os.path.exists(path):
        return done
    with open(path) as fh:
        head = fh.readline()
        try:
            if json.loads(head).get("config_hash") != want_hash:
                return {}
        except json.JSONDecodeError:
            return {}
        for line in fh:
            try:
                rec = json.loads(line)
                done[rec["trial"]] = rec["counts"]
            except (json.JSONDecodeError, KeyError):
                break
    return done


def cmd_count(args: argparse.Namespace) -> int:
    qlist = parse_qlist(args.Q)
    q_max = qlist[-1]
    trials = int(args.trials)
    seed = int(args.seed)
    scale_bits = int(args.scale_bits)
    delta_log = Fraction(args.delta_log)
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    parse_gamma(args.gamma)
    psi = parse_psi(args.psi)
    check_precision_range(q_max, scale_bits)

    semantic = ["gamma", "psi", "Q", "trials", "seed", "delta_log", "scale_bits"]
    cfg_hash = _config_hash(args, semantic)
    ckpt_path = None if args.out == "-" else args.out + ".ckpt"
    done = _load_checkpoint(ckpt_path, cfg_hash) if ckpt_path else {}

    todo = [t for t in range(trials) if t not in done]
    payloads = [(args.gamma, args.psi, q_max, scale_bits, seed, t, None)
                for t in todo]
    workers = int(args.workers)
    results: dict[int, list[int]] = dict(done)
    ckpt_fh = open(ckpt_path, "w") if ckpt_path else None
    if ckpt_fh:
        ckpt_fh.write(json.dumps({"config_hash": cfg_hash}) + "\n")
        for t in sorted(done):
            ckpt_fh.write(json.dumps({"trial": t, "counts": done[t]}) + "\n")
        ckpt_fh.flush()
    if workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for trial, counts in pool.map(_count_trial, payloads):
                results[trial] = counts
                if ckpt_fh:
                    ckpt_fh.write(json.dumps({"trial": trial,
                                              "counts": counts}) + "\n")
                    ckpt_fh.flush()
    else:
        for payload in payloads:
            trial, counts = _count_trial(payload)
            results[trial] = counts
            if ckpt_fh:
                ckpt_fh.write(json.dumps({"trial": trial,
                                          "counts": counts}) + "\n")
                ckpt_fh.flush()
    if ckpt_fh:
        ckpt_fh.close()

    meta = metadata(args, _COUNT_KEYS, config_hash=cfg_hash, base_seed=seed,
                    seed_derivation="splitmix64(seed ^ salt + (trial+1)*gamma)")
    out = Output(args.out, args.format, meta, columns=CountReport.CSV_COLUMNS)
    for trial in range(trials):
        counts = results[trial]
        arr = np.array(counts, dtype=np.int64)
        for Q in qlist:
            rep = make_report(derive_seed(seed, trial), arr, Q, psi, delta_log,
                              args.gamma, args.psi)
            out.row(values=rep.csv_row(), obj=rep.json_dict())
    out.finish()
    if ckpt_path and os.path.exists(ckpt_path):
        os.remove(ckpt_path)
    return EXIT_OK


# -- overlap ---------------------------------------------------------------------


_OVERLAP_KEYS = ["gamma", "psi", "q", "r", "set_a", "set_b", "resolution",
                 "scale_bits"]


def cmd_overlap(args: argparse.Namespace) -> int:
    scale_bits = int(args.scale_bits)
    record: dict = {}
    if args.set_a and args.set_b:
        A, B = parse_set1d(args.set_a), parse_set1d(args.set_b)
        value = overlap_exact_1d(A, B)
        oracle = overlap_sweep_oracle(A, B)
        record = {
            "kind": "1d",
            "value": str(value),
            "oracle": str(oracle),
            "status": "ok" if value == oracle else "FORMULA-ORACLE-MISMATCH",
        }
    elif args.q and args.r:
        if not args.gamma or not args.psi:
            raise ConfigError("2-D overlap needs --gamma and --psi")
        qv, rv = parse_vec(args.q), parse_vec(args.r)
        gamma = parse_gamma(args.gamma)
        psi = parse_psi(args.psi)
        value, tag = overlap_2d(qv, rv, psi, gamma, scale_bits)
        record = {"kind": "2d", "value": str(value), "tag": tag,
                  "status": "ok"}
        if args.resolution:
            est, bnd = overlap_2d_grid_oracle(qv, rv, psi, gamma,
                                              int(args.resolution), scale_bits)
            within = abs(est - value) <= bnd
            record["oracle"] = str(est)
            record["oracle_bound"] = str(bnd)
            if not within:
                record["status"] = "ORACLE-DISAGREES"
        if is_parallel(qv, rv) and rv.norm < qv.norm:
            try:
                w = fit_witness(gamma, psi, max(qv.norm, 2))
            except ValueError:
                w = None  # psi without a decaying power-law core: no bound
            if isinstance(w, NonLiouvilleWitness):
                res = parallel_overlap_bound(qv, rv, psi, w)
                record["parallel_bound_kind"] = res.kind
                record["vanish_threshold"] = res.threshold
                if res.kind == "zero":
                    if value != 0:
                        record["status"] = "VANISH-VIOLATION"
                else:
                    record["parallel_bound"] = str(res.value)
                    if value > res.value:
                        record["status"] = "BOUND-VIOLATION"
    else:
        raise ConfigError("need either --set-a/--set-b or --q/--r")

    meta = metadata(args, _OVERLAP_KEYS)
    doc = json.dumps({"meta": meta, "result": record}, sort_keys=True,
                     default=str)
    if args.out == "-":
        print(doc)
    else:
        with open(args.out, "w") as fh:
            fh.write(doc + "\n")
    return EXIT_OK if record["status"] == "ok" else EXIT_FAIL


# -- variance ---------------------------------------------------------------------


_VARIANCE_KEYS = ["gamma", "psi", "Q", "window", "scale_bits", "format"]


def cmd_variance(args: argparse.Namespace) -> int:
    gamma = parse_gamma(args.gamma)
    psi = parse_psi(args.psi)
    scale_bits = int(args.scale_bits)
    meta = metadata(args, _VARIANCE_KEYS)
    out = Output(args.out, "jsonl", meta)
    if args.window:
        try:
            u_spec, v_spec = args.window.split(":")
        except ValueError as exc:
            raise ConfigError("window syntax: q1,q2:r1,r2") from exc
        rep = variance_window(tuple(parse_vec(u_spec)), tuple(parse_vec(v_spec)),
                              psi, gamma, scale_bits)
        out.row(obj=rep.json_dict())
    else:
        for Q in parse_qlist(args.Q):
            rep = variance_full(Q, psi, gamma, scale_bits)
            out.row(obj=rep.json_dict())
    out.finish()
    return EXIT_OK


# -- gcdsum -----------------------------------------------------------------------


_GCDSUM_KEYS = ["q", "q_max", "k", "cap", "primorials", "format"]


def cmd_gcdsum(args: argparse.Namespace) -> int:
    k = int(args.k)
    cap = None if args.cap in (None, "", "none") else Fraction(args.cap)
    meta = metadata(args, _GCDSUM_KEYS)
    out = Output(args.out, args.format, meta,
                 columns=("q", "sum", "normalized"))
    if args.primorials:
        for q in primorials(int(args.primorials)):
            total, norm = gcd_power_sum(q, k, cap)
            out.row(values=[q, total, str(norm)],
                    obj={"q": q, "sum": total, "normalized": str(norm)})
    elif args.q_max:
        for q, total, norm in gcd_power_sum_sweep(int(args.q_max), k, cap):
            out.row(values=[q, total, str(norm)],
                    obj={"q": q, "sum": total, "normalized": str(norm)})
    elif args.q:
        total, norm = gcd_power_sum(int(args.q), k, cap)
        out.row(values=[int(args.q), total, str(norm)],
                obj={"q": int(args.q), "sum": total, "normalized": str(norm)})
    else:
        raise ConfigError("need one of --q, --q-max, --primorials")
    out.finish()
    return EXIT_OK


# -- cf ---------------------------------------------------------------------------


_CF_KEYS = ["gamma", "terms"]


def cmd_cf(args: argparse.Namespace) -> int:
    spec = args.gamma
    kind, _, rest = spec.partition(":")
    if kind == "liouville":
        cf = make_liouville(int(rest))
    else:
        cf = cf_expand(parse_gamma(spec))
    terms = int(args.terms)
    quots = cf.quotients(terms)
    convs = convergents(cf.a0, quots)
    doc = {
        "meta": metadata(args, _CF_KEYS),
        "a0": cf.a0,
        "preperiod": list(cf.preperiod),
        "period": list(cf.period),
        "quotients": [str(a) for a in quots],
        "convergents": [{"p": str(p), "q": str(q)} for p, q in convs],
    }
    text = json.dumps(doc, sort_keys=True, default=str)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK


# -- hausdorff ---------------------------------------------------------------------


_HAUSDORFF_KEYS = ["exponent", "coefficient", "probe_limit"]


def cmd_hausdorff(args: argparse.Namespace) -> int:
    a = Fraction(args.exponent)
    c0 = Fraction(args.coefficient)
    psi = PowerLaw(c0, a)
    t, dim = hausdorff_exponent(psi)
    limit = int(args.probe_limit)
    probes = {}
    for side, s in (("above", float(t) + 0.1), ("below", float(t) - 0.1)):
        probes[side] = {"s": s,
                        "partial_sum": hausdorff_partial_sum(psi, s, limit)}
    doc = {
        "meta": metadata(args, _HAUSDORFF_KEYS),
        "t": str(t),
        "dim": str(dim),
        "probes": probes,
    }
    text = json.dumps(doc, sort_keys=True, default=str)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return EXIT_OK


# -- lemma3-sweep -------------------------------------------------------------------


_SWEEP_KEYS = ["gamma", "psi", "Q", "eta_max", "scale_bits", "format"]


def cmd_vanishing_sweep(args: argparse.Namespace) -> int:
    gamma = parse_gamma(args.gamma)
    psi = parse_psi(args.psi)
    Q = int(args.Q)
    scale_bits = int(args.scale_bits)
    w = fit_witness(gamma, psi, Q, eta_max=int(args.eta_max))
    if isinstance(w, WitnessFitFailure):
        print(f"witness fit failed: {w}", file=sys.stderr)
        return EXIT_FAIL
    rows, summary = vanishing_bound_sweep(Q, psi, w, gamma, scale_bits)
    meta = metadata(args, _SWEEP_KEYS,
                    witness={"eta": w.eta, "c": str(w.c), "C": str(w.C),
                             "epsilon": str(w.epsilon), "M": w.M,
                             "K": str(w.K)},
                    summary={"rows": summary.n_rows,
                             "zero_confirmed": summary.n_zero_confirmed,
                             "bound_satisfied": summary.n_bound_satisfied,
                             "violations": summary.n_violations,
                             "max_bound_ratio": float(summary.max_bound_ratio)})
    cols = ("d", "e", "r", "q", "threshold", "overlap", "bound", "status", "rel")
    out = Output(args.out, args.format, meta, columns=cols)
    for row in rows:
        vals = [row.d, row.e, row.r, row.q, row.threshold, str(row.overlap),
                "" if row.bound is None else str(row.bound), row.status,
                row.rel]
        out.row(values=vals, obj={
            "d": row.d, "e": row.e, "r": row.r, "q": row.q,
            "threshold": row.threshold, "overlap": str(row.overlap),
            "bound": None if row.bound is None else str(row.bound),
            "status": row.status, "rel": row.rel})
    out.finish()
    return EXIT_OK if summary.ok() else EXIT_FAIL


# -- parser ------------------------------------------------------------------------


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--config", default=None, help="key=value config file")
    sp.add_argument("--out", default=None, help="output path or - for stdout")
    sp.add_argument("--format", default=None, choices=("csv", "jsonl"))
    sp.add_argument("--scale-bits", dest="scale_bits", default=None)


_DEFAULTS_COMMON = {"out": "-", "format": "csv",
                    "scale_bits": str(DEFAULT_SCALE_BITS)}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kglab", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", help="counting-function experiments")
    _add_common(sp)
    sp.add_argument("--gamma", default=None)
    sp.add_argument("--psi", default=None)
    sp.add_argument("--Q", default=None, help="height or comma list")
    sp.add_argument("--trials", default=None)
    sp.add_argument("--seed", default=None)
    sp.add_argument("--delta-log", dest="delta_log", default=None)
    sp.add_argument("--workers", default=None)
    sp.set_defaults(func=cmd_count, defaults={
        **_DEFAULTS_COMMON, "gamma": "sqrt:2", "psi": "pow:1,3/4",
        "Q": "100", "trials": "1", "seed": "0", "delta_log": "1/2",
        "workers": str(os.cpu_count() or 1)})

    sp = sub.add_parser("overlap", help="single overlap record")
    _add_common(sp)
    sp.add_argument("--gamma", default=None)
    sp.add_argument("--psi", default=None)
    sp.add_argument("--q", default=None, help="vector q1,q2")
    sp.add_argument("--r", default=None, help="vector r1,r2")
    sp.add_argument("--set-a", dest="set_a", default=None)
    sp.add_argument("--set-b", dest="set_b", default=None)
    sp.add_argument("--resolution", default=None)
    sp.set_defaults(func=cmd_overlap, defaults={
        **_DEFAULTS_COMMON, "gamma": None, "psi": None, "q": None, "r": None,
        "set_a": None, "set_b": None, "resolution": None})

    sp = sub.add_parser("variance", help="variance reports over Q or a window")
    _add_common(sp)
    sp.add_argument("--gamma", default=None)
    sp.add_argument("--psi", default=None)
    sp.add_argument("--Q", default=None, help="comma list of heights")
    sp.add_argument("--window", default=None, help="u1,u2:v1,v2")
    sp.set_defaults(func=cmd_variance, defaults={
        **_DEFAULTS_COMMON, "gamma": "sqrt:2", "psi": "pow:1/4,1/2",
        "Q": "100", "window": None})

    sp = sub.add_parser("gcdsum", help="gcd power-sum diagnostics")
    _add_common(sp)
    sp.add_argument("--q", default=None)
    sp.add_argument("--q-max", dest="q_max", default=None)
    sp.add_argument("--k", default=None)
    sp.add_argument("--cap", default=None, help="exponent cap, e.g. 3/4")
    sp.add_argument("--primorials", default=None)
    sp.set_defaults(func=cmd_gcdsum, defaults={
        **_DEFAULTS_COMMON, "q": None, "q_max": None, "k": "2", "cap": None,
        "primorials": None})

    sp = sub.add_parser("cf", help="continued-fraction expansion")
    _add_common(sp)
    sp.add_argument("--gamma", default=None)
    sp.add_argument("--terms", default=None)
    sp.set_defaults(func=cmd_cf, defaults={
        **_DEFAULTS_COMMON, "gamma": "sqrt:2", "terms": "10"})

    sp = sub.add_parser("hausdorff", help="critical exponent and probes")
    _add_common(sp)
    sp.add_argument("--exponent", default=None)
    sp.add_argument("--coefficient", default=None)
    sp.add_argument("--probe-limit", dest="probe_limit", default=None)
    sp.set_defaults(func=cmd_hausdorff, defaults={
        **_DEFAULTS_COMMON, "exponent": "2", "coefficient": "8",
        "probe_limit": "1000000"})

    sp = sub.add_parser("lemma3-sweep", help="vanishing/bound sweep")
    _add_common(sp)
    sp.add_argument("--gamma", default=None)
    sp.add_argument("--psi", default=None)
    sp.add_argument("--Q", default=None)
    sp.add_argument("--eta-max", dest="eta_max", default=None)
    sp.set_defaults(func=cmd_vanishing_sweep, defaults={
        **_DEFAULTS_COMMON, "gamma": "sqrt:2", "psi": "pow:1/4,1/2",
        "Q": "100", "eta_max": "10"})
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code not in (0, None) else EXIT_OK
    try:
        apply_config(args, args.defaults)
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PrecisionError as exc:
        print(f"precision range: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
