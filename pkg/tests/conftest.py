import random
from itertools import product
from pathlib import Path

import pytest

from regcalc.cli import default_corpus, random_ideal
from regcalc.idealfile import parse_ideal_file
from regcalc.polyring import GradedRing, parse_poly
from regcalc.resolution import GradedModuleP

P = 32003


def ring(n=2, p=P, names=None):
    return GradedRing(n, p, names or tuple("xyzw"[:n]))


def polys(R, *texts):
    return [parse_poly(R, t) for t in texts]


def quotient(R, *texts):
    return GradedModuleP.quotient_ring(R, polys(R, *texts))


# -- a brute-force oracle, independent of the Groebner engine -------------

def exps_of_degree(n, d):
    return [e for e in product(range(d + 1), repeat=n) if sum(e) == d]


def rank_mod_p(rows, p):
    """Row rank of a list of {col: value} dicts by plain Gaussian elimination."""
    rows = [dict(r) for r in rows if r]
    pivots = {}
    rank = 0
    for r in rows:
        r = {k: v % p for k, v in r.items() if v % p}
        while r:
            c = max(r)
            if c not in pivots:
                inv = pow(r[c], -1, p)
                pivots[c] = {k: v * inv % p for k, v in r.items()}
                rank += 1
                break
            f = r[c]
            for k, v in pivots[c].items():
                r[k] = (r.get(k, 0) - f * v) % p
                if not r[k]:
                    del r[k]
    return rank


def ideal_degree_span(R, gens, d):
    """Rows spanning I_d, as exponent-tuple dicts."""
    rows = []
    for g in gens:
        gd = g.degree
        if gd is None or gd > d:
            continue
        for e in exps_of_degree(R.num_vars, d - gd):
            row = {}
            for m, c in g.raw.items():
                key = tuple(a + b for a, b in zip(R.unpack(m), e))
                row[key] = (row.get(key, 0) + c) % R.char_p
            rows.append(row)
    return rows


def brute_hilbert(R, gens, d):
    """dim_k (R/I)_d by linear algebra on monomial multiples."""
    if d < 0:
        return 0
    rows = ideal_degree_span(R, gens, d)
    return len(exps_of_degree(R.num_vars, d)) - rank_mod_p(rows, R.char_p)


def brute_member(R, gens, f):
    d = f.degree
    rows = ideal_degree_span(R, gens, d)
    base = rank_mod_p(rows, R.char_p)
    row = {R.unpack(m): c for m, c in f.raw.items()}
    return rank_mod_p(rows + [row], R.char_p) == base


# -- corpora ---------------------------------------------------------------

def curated_files():
    d = default_corpus()
    return sorted(Path(d).glob("*.ideal"))


def load_curated():
    return [(p.name, parse_ideal_file(p.read_text())) for p in curated_files()]


def random_corpus(count=200, seed=2024):
    """Deterministic random ideals in 2..4 variables, generator degrees 2..5."""
    rng = random.Random(seed)
    out = []
    kinds = ["monomial", "binomial", "dense"]
    for k in range(count):
        n = rng.choice([2, 3, 3, 4])
        kind = kinds[k % 3]
        max_deg = {2: 5, 3: 4, 4: 3}[n]
        gens = rng.randint(1, 4 if kind == "monomial" else 3)
        f = random_ideal(rng, n, max_deg, gens, kind)
        if f.generators:
            f.label = f"random-{k}"
            out.append((f.label, f))
    return out


@pytest.fixture(scope="session")
def curated():
    return load_curated()


# -- acceptance bookkeeping -------------------------------------------------

ACCEPTANCE = {}


def record(num, ok, detail):
    ACCEPTANCE[num] = (ok, detail)
    print(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
