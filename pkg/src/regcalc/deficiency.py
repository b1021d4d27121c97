"""Ext modules, deficiency modules K^i, local cohomology lengths and hdeg."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Dict, List, Optional, Union

from .groebner import gb_raw, mingens_raw, preimage_raw, to_keys
from .hilbert import (
    DimensionData,
    HilbertPolynomial,
    HilbertSeries,
    dimension_data,
    hilbert_polynomial,
    hilbert_series,
    regularity_index,
)
from .polyring import vec_degree
from .resolution import (
    NEG_INF,
    POS_INF,
    GradedModuleP,
    depth_ab,
    minimal_resolution,
    prune,
    regularity_betti,
)

Num = Union[int, float]

_EXT_CACHE: Dict[tuple, GradedModuleP] = {}


def zero_module(ring) -> GradedModuleP:
    return GradedModuleP(ring, (), ())


def ext_module(M: GradedModuleP, k: int) -> GradedModuleP:
    """Minimal presentation of ``Ext^k_R(M, R)``."""
    ring = M.ring
    if k < 0 or k > ring.num_vars:
        return zero_module(ring)
    M0, s = M.normalized()
    key = (M0.fingerprint(), k)
    E = _EXT_CACHE.get(key)
    if E is None:
        E = _ext_uncached(M0, k)
        _EXT_CACHE[key] = E
    # Ext^k(M(-s), R) = Ext^k(M, R)(s)
    return E.shift(-s) if s else E


def _rows(cols, nrows):
    """Rows of a matrix given by its columns: row ``r`` as a Vec over columns."""
    rows = [dict() for _ in range(nrows)]
    for c, col in enumerate(cols):
        for r, poly in col.items():
            rows[r][c] = poly
    return rows


def _ext_uncached(M: GradedModuleP, k: int) -> GradedModuleP:
    ring = M.ring
    res = minimal_resolution(M)
    L = len(res.twists) - 1
    if k > L:
        return zero_module(ring)
    dual_k = [-a for a in res.twists[k]]
    if k + 1 <= L:
        # kernel of F_k^* -> F_{k+1}^*, whose column r is row r of d_{k+1}
        dual_k1 = [-a for a in res.twists[k + 1]]
        imgs = _rows(res.maps[k], len(res.twists[k]))
        Z = preimage_raw(ring, imgs, dual_k1, dual_k, [])
    else:
        Z = [{r: {0: 1}} for r in range(len(dual_k))]
    if not Z:
        return zero_module(ring)
    B = _rows(res.maps[k - 1], len(res.twists[k - 1])) if k >= 1 else []
    B = [b for b in B if b]
    zdeg = [vec_degree(z, dual_k, ring) for z in Z]
    rels = preimage_raw(ring, Z, dual_k, zdeg, B)
    return prune(GradedModuleP(ring, zdeg, rels))


def deficiency_module(M: GradedModuleP, i: int) -> GradedModuleP:
    """``K^i(M) = Ext^{n-i}(M, R)(-n)``."""
    n = M.ring.num_vars
    if i < 0 or i > n:
        return zero_module(M.ring)
    return ext_module(M, n - i).shift(n)


def local_cohomology_hf(M: GradedModuleP, i: int, t: int) -> int:
    """``length H^i_m(M)_t``, read off ``K^i`` by graded local duality."""
    return hilbert_series(deficiency_module(M, i))(-t)


def beg_of(N: GradedModuleP) -> Num:
    return dimension_data(N).beg


def regularity_duality(M: GradedModuleP) -> Num:
    """``max_i (i - beg K^i(M))``."""
    d = dimension_data(M).dim
    best: Num = NEG_INF
    for i in range(0, d + 1):
        b = beg_of(deficiency_module(M, i))
        if b != POS_INF:
            best = max(best, i - b)
    return best


def end_local_cohomology(M: GradedModuleP, i: int) -> Num:
    return -beg_of(deficiency_module(M, i))


# ---------------------------------------------------------------------------
# homological degree

@dataclass
class HdegValue:
    value: int
    trace: dict = field(default_factory=dict)

    def __int__(self):
        return self.value


_HDEG_CACHE: Dict[tuple, HdegValue] = {}


def hdeg(M: GradedModuleP) -> HdegValue:
    """Homological degree by the Ext recursion; memoized up to shift."""
    dd = dimension_data(M)
    if dd.dim < 0:
        raise ValueError("hdeg of the zero module is undefined")
    M0, _ = prune(M).normalized()
    key = M0.fingerprint()
    hit = _HDEG_CACHE.get(key)
    if hit is not None:
        return hit
    n = M.ring.num_vars
    d = dd.dim
    value = dd.degree
    children = []
    if d >= 1:
        for i in range(d):
            E = ext_module(M0, n + i + 1 - d)
            if not E.gen_twists:
                continue
            sub = hdeg(E)
            w = comb(d - 1, i)
            value += w * sub.value
            children.append({"ext": n + i + 1 - d, "weight": w, "hdeg": sub.value,
                             "trace": sub.trace})
    out = HdegValue(value, {"dim": d, "deg": dd.degree, "gens": list(M0.gen_twists),
                            "children": children})
    _HDEG_CACHE[key] = out
    return out


# ---------------------------------------------------------------------------
# zeroth local cohomology

def saturation_colon(M: GradedModuleP) -> List[dict]:
    """Generators, in the free module of ``M``, of ``N : m^infty``."""
    ring = M.ring
    twists = list(M.gen_twists)

    def lead_set(vecs):
        _, eng, _ = gb_raw(ring, twists, vecs)
        return sorted((e.comp, e.lmono) for e in eng.entries)

    cur = [dict(v) for v in M.relations]
    prev = lead_set(cur)
    while True:
        nxt = _colon_m(ring, twists, cur)
        ls = lead_set(nxt)
        if ls == prev:
            return cur
        cur, prev = nxt, ls


def _colon_m(ring, twists, rels):
    """``N : m`` via the map ``f -> (x_1 f, ..., x_n f)`` into ``F^n``."""
    n = ring.num_vars
    F = len(twists)
    big = list(twists) * n
    imgs = [{i * F + c: {ring.var(i): 1} for i in range(n)} for c in range(F)]
    sub = [{i * F + c: t for c, t in rel.items()} for i in range(n) for rel in rels]
    return preimage_raw(ring, imgs, big, [t + 1 for t in twists], sub)


def h0_module(M: GradedModuleP) -> GradedModuleP:
    """``H^0_m(M) = (N : m^infty) / N`` with a minimal presentation."""
    ring = M.ring
    sat = saturation_colon(M)
    twists = list(M.gen_twists)
    order, eng, _ = gb_raw(ring, twists, M.relations)
    z = []
    for v in sat:
        if eng.reduce(to_keys(order, v)):
            z.append(v)
    if not z:
        return zero_module(ring)
    z = mingens_raw(ring, twists, z)
    zdeg = [vec_degree(v, twists, ring) for v in z]
    rels = preimage_raw(ring, z, twists, zdeg, M.relations)
    return prune(GradedModuleP(ring, zdeg, rels))


def mod_h0(M: GradedModuleP) -> GradedModuleP:
    """``M / H^0_m(M)``."""
    return prune(GradedModuleP(M.ring, M.gen_twists, saturation_colon(M)))


# ---------------------------------------------------------------------------
# profiles

@dataclass
class KData:
    i: int
    module: GradedModuleP
    series: HilbertSeries
    poly: HilbertPolynomial
    dims: DimensionData
    reg: Num
    ri: Num
    depth: Optional[int]

    @property
    def is_zero(self) -> bool:
        return self.dims.dim < 0

    def hf(self, j: int) -> int:
        return self.series(j)


def kdata(M: GradedModuleP, i: int) -> KData:
    K = deficiency_module(M, i)
    hs = hilbert_series(K)
    dd = dimension_data(hs)
    return KData(i, K, hs, hilbert_polynomial(hs), dd,
                 regularity_betti(K), regularity_index(hs),
                 depth_ab(K) if dd.dim >= 0 else None)


@dataclass
class DeficiencyProfile:
    dim: int
    K: List[KData]

    def __getitem__(self, i) -> KData:
        return self.K[i]

    def h(self, i: int) -> Callable[[int], int]:
        """``t -> length H^i_m(M)_t``."""
        if i < 0 or i >= len(self.K):
            return lambda t: 0
        s = self.K[i].series
        return lambda t: s(-t)


def deficiency_profile(M: GradedModuleP) -> DeficiencyProfile:
    d = dimension_data(M).dim
    return DeficiencyProfile(d, [kdata(M, i) for i in range(max(d, -1) + 1)])


# ---------------------------------------------------------------------------
# quantities controlling where h^i becomes polynomial

@dataclass
class BMMData:
    d_funcs: List[Callable[[int], int]]
    q_polys: List[HilbertPolynomial]
    nu: List[Num]
    Delta: List[int]
    window: List[tuple]

    def d(self, i: int, t: int) -> int:
        return self.d_funcs[i](t)

    def q(self, i: int, t: int) -> int:
        """``q^i(t) = P_{K^{i+1}}(-t)``."""
        return self.q_polys[i].value(-t)


def bmm_data(S: GradedModuleP, i_max: Optional[int] = None,
             profile: Optional[DeficiencyProfile] = None) -> BMMData:
    if len(S.gen_twists) != 1:
        raise ValueError("expected a cyclic module R/I")
    prof = profile or deficiency_profile(S)
    d = prof.dim
    if i_max is None:
        i_max = max(d, 0)
    HS = hilbert_series(S)
    n = S.ring.num_vars
    reg_S = regularity_betti(S)

    def kreg(i):
        return prof.K[i].reg if 0 <= i < len(prof.K) else NEG_INF

    def kpoly(i):
        return prof.K[i].poly if 0 <= i < len(prof.K) else HilbertPolynomial([])

    h = prof.h
    d_funcs, q_polys, nus, window = [], [], [], []
    for i in range(i_max + 1):
        if i == 0:
            h0, h1 = h(0), h(1)
            d_funcs.append(lambda t, h0=h0, h1=h1: HS(t) - h0(t) + h1(t))
        else:
            d_funcs.append(h(i + 1))
        q_polys.append(kpoly(i + 1))
    for i in range(i_max + 1):
        # below -reg of every K involved, d^i is already the polynomial tail
        regs = [kreg(i + 1), 0] + ([kreg(0), kreg(1)] if i == 0 else [])
        lo = -int(max(r for r in regs if r != NEG_INF)) - n - 2
        hi = int(reg_S if reg_S != NEG_INF else 0) + n + 3
        window.append((lo, hi))
        nu: Num = POS_INF
        P = q_polys[i]
        for t in range(lo, hi + 1):
            if d_funcs[i](t) != P.value(-t):
                nu = t
                break
        nus.append(nu)
    Delta = []
    for i in range(i_max + 1):
        Delta.append(sum(comb(i, j) * (d_funcs[j](-j) + abs(q_polys[j].value(j)))
                         for j in range(i + 1)))
    return BMMData(d_funcs, q_polys, nus, Delta, window)
