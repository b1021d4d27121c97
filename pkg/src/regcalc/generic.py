"""Random generic choices, each one verified exactly after the fact."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import colon_raw, gb_raw
from .hilbert import hilbert_polynomial, hilbert_series
from .polyring import GREVLEX, GradedRing, Poly, TermOrder, padd, pmul
from .resolution import GradedModuleP


class GenericityError(RuntimeError):
    """A randomized choice could not be certified within its attempt budget."""


@dataclass
class GenericCertificate:
    seed: int
    attempts: int
    property: str
    verified: bool
    modules: List[str] = field(default_factory=list)
    regular: List[bool] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"seed": self.seed, "attempts": self.attempts, "property": self.property,
                "verified": self.verified, "modules": list(self.modules),
                "regular": list(self.regular), "notes": list(self.notes)}


def _random_linear(ring: GradedRing, rng: random.Random) -> Poly:
    p = ring.char_p
    while True:
        cs = [rng.randrange(p) for _ in range(ring.num_vars)]
        if any(cs):
            return Poly(ring, {ring.var(i): c for i, c in enumerate(cs) if c})


def colon_quotient(M: GradedModuleP, x: Poly) -> GradedModuleP:
    """``F / (N : x)``; its Hilbert series differs from ``M``'s by ``0 :_M x``."""
    rels = colon_raw(M.ring, M.gen_twists, M.relations, x.raw)
    return GradedModuleP(M.ring, M.gen_twists, rels)


def annihilator_status(M: GradedModuleP, x: Poly) -> Tuple[bool, bool]:
    """``(dim(0 :_M x) <= 0, 0 :_M x == 0)``."""
    if not M.gen_twists:
        return True, True
    hs_m = hilbert_series(M)
    C = colon_quotient(M, x)
    hs_c = hilbert_series(C)
    # 0 -> (N:x)/N -> F/N -> F/(N:x) -> 0
    finite = hilbert_polynomial(hs_m) == hilbert_polynomial(hs_c)
    return finite, hs_m == hs_c


def filter_regular_element(modules: Sequence[GradedModuleP], seed: int,
                           max_attempts: int = 20,
                           names: Optional[Sequence[str]] = None):
    """A linear form ``x`` with ``0 :_M x`` of finite length for every ``M`` listed."""
    mods = [M for M in modules if M.gen_twists]
    if not mods:
        raise ValueError("need at least one nonzero module")
    ring = mods[0].ring
    rng = random.Random(seed)
    for attempt in range(1, max_attempts + 1):
        x = _random_linear(ring, rng)
        status = [annihilator_status(M, x) for M in mods]
        if all(s[0] for s in status):
            cert = GenericCertificate(seed, attempt, "filter_regular_for", True,
                                      list(names) if names else [f"module{i}" for i in range(len(mods))],
                                      [s[1] for s in status])
            return x, cert
    raise GenericityError(
        f"no filter-regular linear form after {max_attempts} attempts over F_{ring.char_p}")


def quotient_by_linear(M: GradedModuleP, x: Poly) -> GradedModuleP:
    """``M / xM`` over the same ring."""
    if x.is_zero():
        raise ValueError("cannot divide out the zero form")
    if x.degree != 1 or not x.is_homogeneous():
        raise ValueError("expected a linear form")
    extra = [{c: dict(x.raw)} for c in range(len(M.gen_twists))]
    return GradedModuleP(M.ring, M.gen_twists, list(M.relations) + extra)


# ---------------------------------------------------------------------------
# initial ideals

def initial_ideal(ring: GradedRing, polys: Sequence[Poly], order: TermOrder = GREVLEX) -> List[Poly]:
    """Minimal monomial generators of the leading-term ideal."""
    vecs = [{0: dict(f.raw)} for f in polys if not f.is_zero()]
    if not vecs:
        return []
    _, eng, _ = gb_raw(ring, (0,), vecs, order.kind)
    leads = sorted({e.lmono for e in eng.entries})
    mins = [u for u in leads if not any(v != u and ring.divides(v, u) for v in leads)]
    mins.sort(key=lambda m: (ring.mdeg(m), tuple(-e for e in ring.unpack(m))))
    return [Poly(ring, {m: 1}) for m in mins]


def _det_mod_p(mat: List[List[int]], p: int) -> int:
    a = [row[:] for row in mat]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


def random_change(ring: GradedRing, rng: random.Random) -> List[List[int]]:
    """Invertible ``n x n`` matrix over ``F_p``, by rejection sampling."""
    n, p = ring.num_vars, ring.char_p
    while True:
        g = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if _det_mod_p(g, p):
            return g


def substitute(f: Poly, g: List[List[int]]) -> Poly:
    """``f(g x)``: the variable ``x_i`` becomes ``sum_j g[i][j] x_j``."""
    ring = f.ring
    p = ring.char_p
    n = ring.num_vars
    lin = [{ring.var(j): g[i][j] for j in range(n) if g[i][j]} for i in range(n)]
    powers: Dict[Tuple[int, int], Dict[int, int]] = {}

    def power(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = {0: 1} if e == 0 else pmul(power(i, e - 1), lin[i], p)
        return powers[key]

    out: Dict[int, int] = {}
    for m, c in f.raw.items():
        term = {0: c}
        for i, e in enumerate(ring.unpack(m)):
            if e:
                term = pmul(term, power(i, e), p)
        out = padd(out, term, p)
    return Poly(ring, out)


def _gin_once(ring, polys, order, seed):
    rng = random.Random(seed)
    g = random_change(ring, rng)
    return tuple(sorted(next(iter(m.raw)) for m in
                        initial_ideal(ring, [substitute(f, g) for f in polys], order)))


def gin(ring: GradedRing, polys: Sequence[Poly], order: TermOrder = GREVLEX,
        seed: int = 0, budget: int = 6):
    """Generic initial ideal: two independent random coordinate changes must agree."""
    polys = [f for f in polys if not f.is_zero()]
    if not polys:
        raise ValueError("gin of the zero ideal")
    master = random.Random(seed)
    seen: Dict[tuple, int] = {}
    for attempt in range(1, budget + 1):
        s = master.getrandbits(64)
        res = _gin_once(ring, polys, order, s)
        seen[res] = seen.get(res, 0) + 1
        if seen[res] >= 2:
            mons = sorted(res, key=lambda m: (ring.mdeg(m), tuple(-e for e in ring.unpack(m))))
            cert = GenericCertificate(seed, attempt, "gin_stable", True,
                                      notes=[f"{len(seen)} distinct outcomes"])
            return [Poly(ring, {m: 1}) for m in mons], cert
    raise GenericityError(f"gin unstable after {budget} coordinate changes over F_{ring.char_p}")


def gin_module(ring: GradedRing, polys: Sequence[Poly], order: TermOrder = GREVLEX, seed: int = 0):
    mons, cert = gin(ring, polys, order, seed)
    return GradedModuleP.quotient_ring(ring, mons), cert
