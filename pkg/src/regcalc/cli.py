"""Command-line entry point: ``report``, ``verify``, ``search`` and ``gin``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import signal
import sys
import time
import zlib
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from .generic import GenericityError, gin, initial_ideal
from .idealfile import IdealFile, IdealFileError, parse_ideal_file, render_ideal_file
from .polyring import GREVLEX, LEX, GradedRing, Poly, format_poly
from .resolution import NEG_INF
from .verify import Analysis, CheckResult, jsonable, run_all_checks

log = logging.getLogger("regcalc")

SCHEMA = 1


class Timeout(Exception):
    pass


def _on_alarm(signum, frame):
    raise Timeout()


def default_corpus() -> Path:
    env = os.environ.get("REGCALC_CORPUS")
    if env:
        return Path(env)
    return Path(str(resources.files("regcalc") / "corpus"))


# ---------------------------------------------------------------------------
# reports

def _hf_window(series, lo, hi):
    return {"lo": lo, "hi": hi, "values": [series(j) for j in range(lo, hi + 1)]}


def _poly_json(P):
    return [str(c) for c in P.coeffs]


def build_report(f: IdealFile, seed: int = 0, extended: bool = True) -> dict:
    """Every invariant and check for ``R/I``; ``timing`` is kept apart."""
    t0 = time.perf_counter()
    ring = f.ring
    A = Analysis.of_ideal(ring, f.generators, seed=seed, label=f.label)
    checks = run_all_checks(A, extended=extended)
    rep: dict = {
        "schema": SCHEMA,
        "tool": "regcalc",
        "version": __version__,
        "seed": seed,
        "label": f.label,
        "ring": {"char": f.char_p, "vars": list(f.names)},
        "ideal": [format_poly(ring, g.raw) for g in f.generators],
    }
    if A.is_zero:
        rep["invariants"] = {"zero_module": True}
    else:
        inv = {
            "dim": A.dim, "depth": A.depth, "deg": A.deg, "reg": A.reg, "ri": A.ri,
            "beg": A.beg, "end": A.dims.end, "gen": A.gen, "hdeg": A.hdeg,
            "reg_duality": A.reg_duality, "cohen_macaulay": A.is_cm,
            "generalized_cm": A.gen_cm,
        }
        if A.ideal:
            inv["reg_I"] = A.reg_I
        rep["invariants"] = inv
        rep["betti"] = [[i, j, b] for (i, j), b in A.betti.nonzero().items()]
        rep["betti_text"] = A.betti.render()
        rep["hilbert"] = {"numerator": [[e, c] for e, c in A.hs.numerator.items()],
                          "n": A.hs.n, "polynomial": _poly_json(A.hp)}
        r = int(A.reg)
        defs = []
        for K in A.profile.K:
            kr = 0 if K.reg == NEG_INF else int(K.reg)
            defs.append({
                "i": K.i, "zero": K.is_zero, "reg": K.reg, "dim": K.dims.dim,
                "deg": K.dims.degree, "beg": K.dims.beg, "end": K.dims.end, "ri": K.ri,
                "depth": K.depth, "twists": list(K.module.gen_twists),
                "hilbert_window": _hf_window(K.series, -r - A.n - 2, kr + A.n + 2),
                "polynomial": _poly_json(K.poly),
            })
        rep["deficiency"] = defs
        if A.ideal and A.bmm is not None:
            b = A.bmm
            rep["bmm"] = {"nu": b.nu, "Delta": b.Delta, "window": [list(w) for w in b.window]}
        rep["hdeg_trace"] = A.hdeg_trace
    if not A.is_zero and A.fr is not None:
        rep["filter_regular"] = format_poly(ring, A.fr[0].raw)
    rep["checks"] = [c.to_json() for c in checks]
    expect_results = []
    for key, want in f.expect.items():
        got = rep.get("invariants", {}).get(key)
        ok = str(jsonable(got)) == want
        expect_results.append({"key": key, "expected": want, "got": jsonable(got), "ok": ok})
    rep["expect"] = expect_results
    rep["certificates"] = A.certificates
    notes = list(A.notes)
    if not A.is_zero and A.is_cm:
        notes.append(f"Cohen-Macaulay: hdeg = deg = {A.deg}; reg K^{A.dim} = {A.dim} - beg holds with equality")
    rep["notes"] = notes
    rep["summary"] = _summary(checks, expect_results)
    rep["timing"] = {"seconds": round(time.perf_counter() - t0, 4)}
    return jsonable(rep)


def _summary(checks: Sequence[CheckResult], expect_results) -> dict:
    s = {"pass": 0, "fail": 0, "skip": 0}
    for c in checks:
        s[c.status] += 1
    s["expect_fail"] = sum(not e["ok"] for e in expect_results)
    return s


def report_failed(rep: dict) -> bool:
    s = rep.get("summary", {})
    return bool(s.get("fail") or s.get("expect_fail") or rep.get("error"))


def render_text(rep: dict) -> str:
    out = []
    label = rep.get("label") or ""
    out.append(f"regcalc {rep['version']}  {label}".rstrip())
    out.append(f"ring F_{rep['ring']['char']}[{', '.join(rep['ring']['vars'])}]")
    out.append(f"ideal ({', '.join(rep['ideal'])})")
    inv = rep.get("invariants", {})
    out.append("  ".join(f"{k}={v}" for k, v in inv.items()))
    if "betti_text" in rep:
        out.append("betti:")
        out.append(rep["betti_text"])
    for K in rep.get("deficiency", []):
        if K["zero"]:
            out.append(f"K^{K['i']} = 0")
        else:
            out.append(f"K^{K['i']}: reg={K['reg']} dim={K['dim']} deg={K['deg']} "
                       f"beg={K['beg']} ri={K['ri']}")
    if "bmm" in rep:
        out.append(f"nu={rep['bmm']['nu']} Delta={rep['bmm']['Delta']}")
    for c in rep["checks"]:
        if c["status"] == "skip":
            out.append(f"  skip {c['check_id']}: {c['reason']}")
        else:
            rhs = c["rhs"]
            if isinstance(rhs, str) and len(rhs) > 40:
                rhs = rhs[:20] + f"...({len(rhs)} digits)"
            out.append(f"  {c['status']:4} {c['check_id']}: {c['lhs']} {c['relation']} {rhs}")
    for note in rep.get("notes", []):
        out.append(f"note: {note}")
    for e in rep.get("expect", []):
        out.append(f"  {'pass' if e['ok'] else 'fail'} expect.{e['key']}: got {e['got']}, want {e['expected']}")
    s = rep["summary"]
    out.append(f"{s['pass']} passed, {s['fail']} failed, {s['skip']} skipped")
    return "\n".join(out)


def _with_timeout(fn, timeout: Optional[float], *args):
    if not timeout or not hasattr(signal, "SIGALRM"):
        return fn(*args)
    old = signal.signal(signal.SIGALRM, _on_alarm)
    signal.setitimer(signal.ITIMER_REAL, timeout)
    try:
        return fn(*args)
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def file_seed(seed: int, name: str) -> int:
    """Per-file seed, independent of scheduling."""
    return (seed * 1000003 + zlib.crc32(name.encode())) & 0xFFFFFFFF


def _report_path(job):
    path, seed, char, timeout, extended = job
    name = Path(path).name
    try:
        text = Path(path).read_text(encoding="utf-8")
        f = parse_ideal_file(text, char)
        rep = _with_timeout(build_report, timeout, f, file_seed(seed, name), extended)
        rep["file"] = name
        return rep
    except Timeout:
        return {"file": name, "error": f"timeout after {timeout}s"}
    except (IdealFileError, OSError, UnicodeDecodeError) as exc:
        return {"file": name, "error": str(exc)}
    except GenericityError as exc:
        return {"file": name, "error": f"genericity: {exc}"}


def _map(jobs_fn, jobs, n_jobs: int):
    if n_jobs and n_jobs > 1 and len(jobs) > 1:
        import multiprocessing as mp
        with mp.Pool(n_jobs) as pool:
            return pool.map(jobs_fn, jobs, chunksize=1)
    return [jobs_fn(j) for j in jobs]


def verify_corpus(directory, seed: int = 0, char: Optional[int] = None, jobs: int = 1,
                  timeout: Optional[float] = 120, extended: bool = True) -> List[dict]:
    d = Path(directory)
    files = sorted(p for p in d.iterdir() if p.is_file() and p.suffix in (".ideal", ".txt")) \
        if d.is_dir() else []
    return _map(_report_path, [(str(p), seed, char, timeout, extended) for p in files], jobs)


def aggregate(reports: Sequence[dict]) -> Dict[str, Dict[str, int]]:
    """check family -> {pass, fail, skip} counts over the corpus."""
    table: Dict[str, Dict[str, int]] = {}
    for rep in reports:
        for c in rep.get("checks", []):
            fam = c["check_id"].split(".i=")[0]
            row = table.setdefault(fam, {"pass": 0, "fail": 0, "skip": 0})
            row[c["status"]] += 1
    return dict(sorted(table.items()))


# ---------------------------------------------------------------------------
# random ideals and the search mode

def random_ideal(rng: random.Random, n: int, max_deg: int, num_gens: int,
                 kind: str = "monomial", char_p: int = 32003) -> IdealFile:
    """A random homogeneous ideal without generators of degree < 2."""
    names = tuple("xyzw"[:n]) if n <= 4 else tuple(f"x{i + 1}" for i in range(n))
    ring = GradedRing(n, char_p, names)
    gens: List[Poly] = []
    for _ in range(num_gens):
        d = rng.randint(2, max(2, max_deg))
        monos = ring.monomials_of_degree(d)
        if kind == "monomial":
            terms = {rng.choice(monos): 1}
        elif kind == "binomial":
            a, b = rng.sample(monos, 2) if len(monos) > 1 else (monos[0], monos[0])
            terms = {a: 1}
            if b != a:
                terms[b] = char_p - 1 if rng.random() < 0.5 else rng.randrange(1, char_p)
        elif kind == "dense":
            k = min(len(monos), rng.randint(2, 4))
            terms = {m: rng.randrange(1, char_p) for m in rng.sample(monos, k)}
        else:
            raise ValueError(f"unknown kind {kind!r}")
        g = Poly(ring, terms)
        if not g.is_zero() and all(g.raw != h.raw for h in gens):
            gens.append(g)
    return IdealFile(char_p, names, gens, "")


def _search_one(job):
    idx, seed, n, max_deg, num_gens, kind, timeout = job
    rng = random.Random(seed * 7919 + idx)
    f = random_ideal(rng, n, max_deg, num_gens, kind)
    f.label = f"search-{seed}-{idx}"
    text = render_ideal_file(f)
    try:
        rep = _with_timeout(build_report, timeout, f, file_seed(seed, f.label), False)
    except Timeout:
        return {"index": idx, "ideal": text, "error": "timeout"}
    except GenericityError as exc:
        return {"index": idx, "ideal": text, "error": f"genericity: {exc}"}
    rows = []
    for c in rep["checks"]:
        if c["status"] == "skip" or c["relation"] not in ("<", "<="):
            continue
        lhs, rhs = c["lhs"], c["rhs"]
        try:
            lv, rv = int(lhs), int(rhs)
        except (TypeError, ValueError):
            continue
        if rv <= 0:
            continue
        ratio = Fraction(lv, rv)
        rows.append({"check_id": c["check_id"], "lhs": lv, "rhs": str(rv) if rv >= 1 << 53 else rv,
                     "ratio": f"{float(ratio):.6g}", "_ratio": ratio, "status": c["status"]})
    fails = [c["check_id"] for c in rep["checks"] if c["status"] == "fail"]
    return {"index": idx, "ideal": text, "rows": rows, "fails": fails}


def search(n: int = 3, max_deg: int = 3, num_gens: int = 3, count: int = 100, seed: int = 7,
           kind: str = "monomial", top: int = 5, jobs: int = 1,
           timeout: Optional[float] = 120) -> dict:
    if n > 4:
        raise ValueError("search is limited to n <= 4")
    results = _map(_search_one, [(i, seed, n, max_deg, num_gens, kind, timeout)
                                 for i in range(count)], jobs)
    best: Dict[str, list] = {}
    failures = []
    errors = []
    for res in results:
        if "error" in res:
            errors.append({"index": res["index"], "ideal": res["ideal"], "error": res["error"]})
            continue
        for fid in res["fails"]:
            failures.append({"index": res["index"], "check_id": fid, "ideal": res["ideal"],
                             "seed": seed})
        for row in res["rows"]:
            best.setdefault(row["check_id"], []).append(
                (row["_ratio"], -res["index"], row, res["ideal"]))
    table = {}
    for cid in sorted(best):
        ranked = sorted(best[cid], key=lambda t: (t[0], t[1]), reverse=True)[:top]
        table[cid] = [{"index": -t[1], "lhs": t[2]["lhs"], "rhs": t[2]["rhs"],
                       "ratio": t[2]["ratio"], "ideal": t[3]} for t in ranked]
    return {"schema": SCHEMA, "tool": "regcalc", "version": __version__,
            "params": {"n": n, "max_deg": max_deg, "num_gens": num_gens, "count": count,
                       "seed": seed, "kind": kind, "top": top},
            "failures": failures, "errors": errors, "extremal": table}


# ---------------------------------------------------------------------------

def _dump(obj, path: Optional[str]):
    text = json.dumps(obj, sort_keys=True, indent=1)
    if path in (None, "-"):
        print(text)
    else:
        Path(path).write_text(text + "\n", encoding="utf-8")


def cmd_report(args) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
        f = parse_ideal_file(text, args.char)
    except (IdealFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        rep = _with_timeout(build_report, args.timeout_secs, f, args.seed)
    except Timeout:
        print(f"error: timeout after {args.timeout_secs}s", file=sys.stderr)
        return 1
    print(render_text(rep))
    if args.json:
        _dump(rep, args.json)
    return 1 if report_failed(rep) else 0


def cmd_verify(args) -> int:
    d = Path(args.dir) if args.dir else default_corpus()
    if not d.is_dir():
        print(f"error: {d} is not a directory", file=sys.stderr)
        return 2
    reps = verify_corpus(d, args.seed, args.char, args.jobs, args.timeout_secs)
    if not reps:
        print(f"warning: no ideal files in {d}", file=sys.stderr)
    bad = 0
    for rep in reps:
        if "error" in rep:
            print(f"ERROR {rep['file']}: {rep['error']}")
            bad += 1
            continue
        s = rep["summary"]
        status = "FAIL" if report_failed(rep) else "ok"
        if status == "FAIL":
            bad += 1
        print(f"{status:5} {rep['file']:32} pass={s['pass']} fail={s['fail']} skip={s['skip']}")
        for c in rep["checks"]:
            if c["status"] == "fail":
                print(f"      {c['check_id']}: {c['lhs']} {c['relation']} {c['rhs']}")
    table = aggregate(reps)
    if table:
        width = max(len(k) for k in table)
        print(f"{'check':{width}}  pass  fail  skip")
        for k, row in table.items():
            print(f"{k:{width}}  {row['pass']:4}  {row['fail']:4}  {row['skip']:4}")
    print(f"{len(reps)} files, {bad} with failures or errors")
    if args.json:
        _dump({"schema": SCHEMA, "reports": reps, "aggregate": table}, args.json)
    return 1 if bad else 0


def cmd_search(args) -> int:
    try:
        res = search(args.n, args.max_deg, args.num_gens, args.count, args.seed, args.kind,
                     args.top, args.jobs, args.timeout_secs)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _dump(res, args.json or args.out)
    return 1 if res["failures"] else 0


def cmd_gin(args) -> int:
    try:
        f = parse_ideal_file(Path(args.file).read_text(encoding="utf-8"), args.char)
    except (IdealFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    order = GREVLEX if args.order == "grevlex" else LEX
    ring = f.ring
    try:
        mons, cert = gin(ring, f.generators, order, args.seed)
    except (GenericityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    inn = initial_ideal(ring, f.generators, order)
    out = {"schema": SCHEMA, "order": args.order,
           "gin": [format_poly(ring, m.raw) for m in mons],
           "initial_ideal": [format_poly(ring, m.raw) for m in inn],
           "certificate": cert.to_json()}
    print("gin: " + ", ".join(out["gin"]))
    print("in:  " + ", ".join(out["initial_ideal"]))
    print(f"certificate: seed={cert.seed} attempts={cert.attempts} stable={cert.verified}")
    if args.json:
        _dump(out, args.json)
    return 0


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--char", type=int, default=None, help="override the coefficient prime")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", default=None, metavar="PATH")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timeout-secs", type=float, default=120)

    p = argparse.ArgumentParser(prog="regcalc", description=__doc__)
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    r = sub.add_parser("report", parents=[common], help="invariants and checks for one ideal file")
    r.add_argument("file")
    r.set_defaults(func=cmd_report)

    v = sub.add_parser("verify", parents=[common], help="run every check over a corpus directory")
    v.add_argument("dir", nargs="?", default=None)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", parents=[common], help="random ideals, extremal slack table")
    s.add_argument("--n", type=int, default=3)
    s.add_argument("--max-deg", type=int, default=3)
    s.add_argument("--num-gens", type=int, default=3)
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--top", type=int, default=5)
    s.add_argument("--kind", choices=["monomial", "binomial", "dense"], default="monomial")
    s.add_argument("--out", default="regcalc-search.json", metavar="PATH",
                   help="results file, '-' for stdout")
    s.set_defaults(func=cmd_search, seed=7)

    g = sub.add_parser("gin", parents=[common], help="generic initial ideal of one ideal file")
    g.add_argument("file")
    g.add_argument("--order", choices=["grevlex", "lex"], default="grevlex")
    g.set_defaults(func=cmd_gin)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
