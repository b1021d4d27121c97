"""Finitely presented graded modules, Schreyer resolutions and Betti tables."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .groebner import (
    SchreyerOrder,
    TopOrder,
    _Engine,
    from_keys,
    mingens_raw,
    run_buchberger,
    to_keys,
)
from .polyring import (
    GREVLEX,
    FreeModuleElem,
    GradedFreeModule,
    GradedRing,
    Poly,
    TermOrder,
    Vec,
    format_poly,
    vec_add,
    vec_degree,
    vec_fingerprint,
    vec_is_homogeneous,
)

NEG_INF = float("-inf")
POS_INF = float("inf")


class GradedModuleP:
    """``F / N`` with ``F = ⊕ R(-a_j)`` and ``N`` spanned by ``relations``."""

    def __init__(self, ring: GradedRing, gen_twists: Sequence[int], relations: Sequence[Vec] = ()):
        self.ring = ring
        self.gen_twists = tuple(int(a) for a in gen_twists)
        rels = []
        for v in relations:
            if isinstance(v, FreeModuleElem):
                v = v.vec
            v = {c: dict(t) for c, t in v.items() if t}
            if not v:
                continue
            if any(not 0 <= c < len(self.gen_twists) for c in v):
                raise IndexError("relation component out of range")
            if not vec_is_homogeneous(v, self.gen_twists, ring):
                raise ValueError("relations must be homogeneous")
            rels.append(v)
        self.relations = rels

    @classmethod
    def quotient_ring(cls, ring: GradedRing, polys: Sequence[Poly]) -> "GradedModuleP":
        """``R/I`` for the ideal generated by ``polys``."""
        return cls(ring, (0,), [{0: dict(f.raw)} for f in polys if not f.is_zero()])

    @classmethod
    def free(cls, ring: GradedRing, twists: Sequence[int]) -> "GradedModuleP":
        return cls(ring, twists, [])

    @classmethod
    def ideal_module(cls, ring: GradedRing, polys: Sequence[Poly]) -> "GradedModuleP":
        """The ideal itself as a module, presented by its syzygies."""
        from .groebner import preimage_raw

        vecs = mingens_raw(ring, (0,), [{0: dict(f.raw)} for f in polys if not f.is_zero()])
        degs = [vec_degree(v, (0,), ring) for v in vecs]
        syz = preimage_raw(ring, vecs, (0,), degs, [])
        return cls(ring, degs, syz)

    @property
    def free_module(self) -> GradedFreeModule:
        return GradedFreeModule(self.ring, self.gen_twists)

    def shift(self, a: int) -> "GradedModuleP":
        """``M(-a)``: every generator moves up by ``a`` degrees."""
        return GradedModuleP(self.ring, [t + a for t in self.gen_twists], self.relations)

    def fingerprint(self) -> tuple:
        return (self.ring.num_vars, self.ring.char_p, self.gen_twists,
                tuple(vec_fingerprint(v) for v in self.relations))

    def normalized(self) -> Tuple["GradedModuleP", int]:
        """``(M0, s)`` with ``M == M0.shift(s)`` and ``min twist of M0 == 0``."""
        if not self.gen_twists:
            return self, 0
        s = min(self.gen_twists)
        return self.shift(-s), s

    def __repr__(self):
        rels = "; ".join(
            ", ".join(f"{c}: {format_poly(self.ring, t)}" for c, t in sorted(v.items()))
            for v in self.relations)
        return f"GradedModuleP(twists={list(self.gen_twists)}, relations=[{rels}])"


@dataclass
class FreeResolution:
    """``F_0 <- F_1 <- ... <- F_L``; ``maps[k]`` lists the columns of ``F_{k+1} -> F_k``."""

    ring: GradedRing
    twists: List[List[int]]
    maps: List[List[Vec]]
    minimal: bool = False

    @property
    def length(self) -> int:
        return len([t for t in self.twists if t]) - 1 if self.twists and self.twists[0] else -1

    def shift(self, a: int) -> "FreeResolution":
        return FreeResolution(self.ring, [[t + a for t in tw] for tw in self.twists],
                              self.maps, self.minimal)

    def composites_vanish(self) -> bool:
        p = self.ring.char_p
        for k in range(1, len(self.maps)):
            outer, inner = self.maps[k - 1], self.maps[k]
            for col in inner:
                acc: Vec = {}
                for r, poly in col.items():
                    acc = vec_add(acc, outer[r], p, scale=poly)
                if acc:
                    return False
        return True

    def has_unit_entries(self) -> bool:
        return any(0 in poly for cols in self.maps for col in cols for poly in col.values())


@dataclass
class BettiTable:
    beta: Dict[Tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, ij) -> int:
        return self.beta.get(ij, 0)

    def nonzero(self) -> Dict[Tuple[int, int], int]:
        return {k: v for k, v in sorted(self.beta.items()) if v}

    def shift(self, a: int) -> "BettiTable":
        return BettiTable({(i, j + a): b for (i, j), b in self.beta.items()})

    def render(self) -> str:
        """Macaulay2 layout: rows ``j - i``, columns ``i``."""
        nz = self.nonzero()
        if not nz:
            return "0"
        cols = range(max(i for i, _ in nz) + 1)
        rows = range(min(j - i for i, j in nz), max(j - i for i, j in nz) + 1)
        width = max(len(str(v)) for v in nz.values()) + 1
        lines = ["       " + "".join(f"{i:>{width}}" for i in cols)]
        lines.append("total: " + "".join(
            f"{sum(v for (i2, _), v in nz.items() if i2 == i):>{width}}" for i in cols))
        for r in rows:
            cells = []
            for i in cols:
                v = nz.get((i, i + r), 0)
                cells.append(f"{v if v else '.':>{width}}")
            lines.append(f"{r:>5}: " + "".join(cells))
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# presentations

def prune(M: GradedModuleP) -> GradedModuleP:
    """Minimal presentation: drop generators killed by unit relations, then
    keep a minimal generating set of the relations."""
    p = M.ring.char_p
    twists = list(M.gen_twists)
    rels = [dict(v) for v in M.relations]
    alive = list(range(len(twists)))
    while True:
        found = None
        for ri, v in enumerate(rels):
            for c, t in v.items():
                u = t.get(0)
                if u is not None and len(t) == 1:
                    found = (ri, c, u)
                    break
            if found:
                break
        if not found:
            break
        ri, c, u = found
        piv = rels.pop(ri)
        uinv = pow(u, -1, p)
        new = []
        for v in rels:
            a = v.get(c)
            if a:
                v = vec_add(v, piv, p, scale=a, s=-uinv)
            v.pop(c, None)
            if v:
                new.append(v)
        rels = new
        alive.remove(c)
    remap = {old: i for i, old in enumerate(alive)}
    new_twists = [twists[o] for o in alive]
    rels = [{remap[c]: t for c, t in v.items()} for v in rels]
    rels = mingens_raw(M.ring, new_twists, rels)
    return GradedModuleP(M.ring, new_twists, rels)


# ---------------------------------------------------------------------------
# resolutions

def _lex_desc(ring, m):
    return tuple(-e for e in ring.unpack(m))


def free_resolution(M: GradedModuleP, max_len: Optional[int] = None,
                    order: TermOrder = GREVLEX) -> FreeResolution:
    """Schreyer resolution (not minimal).

    The Groebner basis of the relations is sorted so that leading monomials in
    the same component decrease lexicographically; the induced syzygies then
    lose one more variable from their leading terms at each step, which keeps
    the length at most ``n``.
    """
    ring = M.ring
    if max_len is None:
        # the lex sorting bounds the length by n; the slack is only a guard
        max_len = 2 * ring.num_vars + 2
    twists0 = list(M.gen_twists)
    order0 = TopOrder(ring, twists0, order.kind)
    eng, _ = run_buchberger(order0, ring, [to_keys(order0, v) for v in M.relations])
    elems = [eng.element(i) for i in range(len(eng.entries))]
    cur = order0
    twists = [twists0]
    maps: List[List[Vec]] = []
    p = ring.char_p
    while elems and len(maps) < max_len:
        info = []
        for f in elems:
            lead = max(f)
            c, lm = cur.term(lead)
            info.append((c, _lex_desc(ring, lm), lead, lm, f))
        info.sort(key=lambda t: (t[0], t[1]))
        cols = [from_keys(cur, t[4]) for t in info]
        tw = [cur.tdeg(t[2]) for t in info]
        maps.append(cols)
        twists.append(tw)
        if len(maps) >= max_len:
            break
        nxt = SchreyerOrder(cur, [t[2] for t in info], [t[3] for t in info], tw)
        eng = _Engine(cur, ring)
        for t in info:
            eng.add(dict(t[4]))
        R = len(info)
        comps = [t[0] for t in info]
        leads = [t[3] for t in info]
        new_elems = []
        for i in range(R):
            cand: Dict[int, int] = {}
            for j in range(i + 1, R):
                if comps[j] != comps[i]:
                    continue
                l = ring.lcm(leads[i], leads[j])
                u = l - leads[i]
                if u not in cand:
                    cand[u] = j
            keep = [u for u in cand
                    if not any(v != u and ring.divides(v, u) for v in cand)]
            keep.sort(key=lambda u: nxt.key(i, u))
            for u in keep:
                j = cand[u]
                l = u + leads[i]
                v = l - leads[j]
                ei, ej = eng.entries[i], eng.entries[j]
                su, sv = cur.delta(u), cur.delta(v)
                s = {k + su: a for k, a in ei.tail.items()}
                for k, a in ej.tail.items():
                    k2 = k + sv
                    w = (s.get(k2, 0) - a) % p
                    if w:
                        s[k2] = w
                    else:
                        s.pop(k2, None)
                tau = {nxt.key(i, u): 1, nxt.key(j, v): p - 1}
                if s:
                    quot: list = []
                    rem = eng.reduce(s, quot)
                    if rem:
                        raise RuntimeError("Schreyer pair did not reduce to zero")
                    for hit, q, c in quot:
                        kk = nxt.key(hit, q)
                        w = (tau.get(kk, 0) - c) % p
                        if w:
                            tau[kk] = w
                        else:
                            tau.pop(kk, None)
                new_elems.append(tau)
        elems = new_elems
        cur = nxt
    return FreeResolution(ring, twists, maps, minimal=False)


def minimize(res: FreeResolution) -> FreeResolution:
    """Cancel unit entries pairwise (Schur complement) until none remain."""
    ring = res.ring
    p = ring.char_p
    twists = [list(t) for t in res.twists]
    maps = [[{c: dict(t) for c, t in col.items()} for col in cols] for cols in res.maps]
    for k in range(len(maps)):
        while True:
            cols = maps[k]
            hit = None
            for ci, col in enumerate(cols):
                for r, poly in col.items():
                    u = poly.get(0)
                    if u is not None:
                        hit = (ci, r, u)
                        break
                if hit:
                    break
            if hit is None:
                break
            ci, r, u = hit
            piv = cols[ci]
            uinv = pow(u, -1, p)
            new_cols = []
            for cj, col in enumerate(cols):
                if cj == ci:
                    continue
                a = col.get(r)
                if a:
                    col = vec_add(col, piv, p, scale=a, s=-uinv)
                col.pop(r, None)
                new_cols.append({(c if c < r else c - 1): t for c, t in col.items()})
            maps[k] = new_cols
            twists[k].pop(r)
            twists[k + 1].pop(ci)
            if k > 0:
                maps[k - 1].pop(r)
            if k + 1 < len(maps):
                nxt = []
                for col in maps[k + 1]:
                    col.pop(ci, None)
                    nxt.append({(c if c < ci else c - 1): t for c, t in col.items()})
                maps[k + 1] = nxt
    while maps and not twists[-1]:
        maps.pop()
        twists.pop()
    return FreeResolution(ring, twists, maps, minimal=True)


@lru_cache(maxsize=4096)
def _minres_cached(fp, kind):
    M = _FP_REGISTRY.pop(fp)
    return minimize(free_resolution(M, order=GREVLEX if kind == "grevlex" else TermOrder(kind)))


_FP_REGISTRY: Dict[tuple, GradedModuleP] = {}


def minimal_resolution(M: GradedModuleP, order: TermOrder = GREVLEX) -> FreeResolution:
    M0, s = M.normalized()
    fp = M0.fingerprint()
    _FP_REGISTRY[fp] = M0
    try:
        res = _minres_cached(fp, order.kind)
    finally:
        _FP_REGISTRY.pop(fp, None)
    return res.shift(s) if s else res


def betti_table(M: GradedModuleP, order: TermOrder = GREVLEX) -> BettiTable:
    res = minimal_resolution(M, order)
    beta: Counter = Counter()
    for i, tw in enumerate(res.twists):
        for j in tw:
            beta[(i, j)] += 1
    return BettiTable(dict(beta))


def regularity_betti(M: GradedModuleP) -> float:
    nz = betti_table(M).nonzero()
    if not nz:
        return NEG_INF
    return max(j - i for i, j in nz)


def projective_dimension(M: GradedModuleP) -> int:
    nz = betti_table(M).nonzero()
    if not nz:
        raise ValueError("zero module has no projective dimension")
    return max(i for i, _ in nz)


def depth_ab(M: GradedModuleP) -> int:
    """Auslander-Buchsbaum: ``n - pd M``."""
    return M.ring.num_vars - projective_dimension(M)


def gen_degree(M: GradedModuleP) -> float:
    nz = betti_table(M).nonzero()
    tw = [j for (i, j) in nz if i == 0]
    return max(tw) if tw else NEG_INF


def is_zero_module(M: GradedModuleP) -> bool:
    return not betti_table(M).nonzero()
