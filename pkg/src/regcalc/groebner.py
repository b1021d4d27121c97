"""Buchberger's algorithm for homogeneous submodules of graded free modules.

Elements are held in *key space*: a dict ``{order key: coeff}`` where the key
is an int that encodes ``(component, monomial)`` and compares like the term
order.  Every order used here has keys that are affine in the monomial, i.e.
``key(c, m * u) == key(c, m) + delta(u)``, so shifting an element by a
monomial is adding one integer to each of its keys and the leading term is
just ``max(f)``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .polyring import (
    GREVLEX,
    FreeModuleElem,
    GradedFreeModule,
    GradedRing,
    Poly,
    RingMismatch,
    TermOrder,
    Vec,
    vec_degree,
)

COMP_BITS = 20
COMP_MASK = (1 << COMP_BITS) - 1
TDEG_BITS = 24
TDEG_OFFSET = 1 << 23
TDEG_MASK = (1 << TDEG_BITS) - 1


class TopOrder:
    """Degree, then monomial order, then position (smaller index wins).

    ``blocks`` optionally assigns each component a block number compared
    before anything else; higher blocks dominate.  The total degree is compared
    first even for lex, which is harmless because all elements are homogeneous.
    """

    def __init__(self, ring: GradedRing, twists: Sequence[int], kind: str = "grevlex",
                 blocks: Optional[Sequence[int]] = None):
        self.ring = ring
        self.twists = list(twists)
        self.kind = kind
        self.blocks = list(blocks) if blocks is not None else [0] * len(self.twists)
        self._mb = ring.mono_bits
        self._mbmask = (1 << self._mb) - 1
        self._hi_shift = self._mb + COMP_BITS
        self._delta_cache: Dict[int, int] = {}
        n = ring.num_vars
        self._lex_shifts = [(n - 1 - i) * 12 for i in range(n)]

    def _mid(self, m: int) -> int:
        if self.kind == "grevlex":
            return m ^ self.ring.vars_mask
        e = self.ring.unpack(m)
        return sum(x << s for x, s in zip(e, self._lex_shifts))

    def key(self, comp: int, m: int) -> int:
        hi = (self.blocks[comp] << TDEG_BITS) | (self.ring.mdeg(m) + self.twists[comp] + TDEG_OFFSET)
        return (((hi << self._mb) | self._mid(m)) << COMP_BITS) | (COMP_MASK - comp)

    def delta(self, m: int) -> int:
        d = self._delta_cache.get(m)
        if d is None:
            r = self.ring
            dm = r.mdeg(m)
            if self.kind == "grevlex":
                mid = (dm << r.deg_shift) - (m & r.vars_mask)
            else:
                mid = self._mid(m)
            d = (dm << self._hi_shift) + (mid << COMP_BITS)
            self._delta_cache[m] = d
        return d

    def term(self, k: int) -> Tuple[int, int]:
        comp = COMP_MASK - (k & COMP_MASK)
        mid = (k >> COMP_BITS) & self._mbmask
        if self.kind == "grevlex":
            return comp, mid ^ self.ring.vars_mask
        r = self.ring
        exps = [(mid >> s) & 0x7FF for s in self._lex_shifts]
        return comp, r.pack(exps)

    def comp(self, k: int) -> int:
        return COMP_MASK - (k & COMP_MASK)

    def tdeg(self, k: int) -> int:
        return ((k >> self._hi_shift) & TDEG_MASK) - TDEG_OFFSET


class SchreyerOrder:
    """Order induced on ``⊕ R e_i`` by ``m e_i -> LT(m g_i)``; ties favour smaller ``i``."""

    def __init__(self, parent, lead_keys: Sequence[int], lead_monos: Sequence[int],
                 twists: Sequence[int]):
        self.parent = parent
        self.ring = parent.ring
        self.lead_keys = list(lead_keys)
        self.lead_monos = list(lead_monos)
        self.twists = list(twists)
        self.rank = len(self.lead_keys)
        self._delta_cache: Dict[int, int] = {}

    def key(self, comp: int, m: int) -> int:
        return (self.lead_keys[comp] + self.parent.delta(m)) * self.rank + (self.rank - 1 - comp)

    def delta(self, m: int) -> int:
        d = self._delta_cache.get(m)
        if d is None:
            d = self.parent.delta(m) * self.rank
            self._delta_cache[m] = d
        return d

    def term(self, k: int) -> Tuple[int, int]:
        q, r = divmod(k, self.rank)
        i = self.rank - 1 - r
        _, pm = self.parent.term(q)
        return i, pm - self.lead_monos[i]

    def comp(self, k: int) -> int:
        return self.rank - 1 - k % self.rank

    def tdeg(self, k: int) -> int:
        return self.parent.tdeg(k // self.rank)


def to_keys(order, v: Vec) -> Dict[int, int]:
    key = order.key
    return {key(c, m): a for c, t in v.items() for m, a in t.items()}


def from_keys(order, f: Dict[int, int]) -> Vec:
    out: Vec = {}
    term = order.term
    for k, a in f.items():
        c, m = term(k)
        out.setdefault(c, {})[m] = a
    return out


@dataclass
class _Entry:
    lead: int
    comp: int
    lmono: int
    tail: Dict[int, int]
    deg: int


class _Engine:
    """Buchberger state for one order; reusable for normal forms afterwards."""

    def __init__(self, order, ring: GradedRing):
        self.order = order
        self.ring = ring
        self.p = ring.char_p
        self.entries: List[_Entry] = []
        self.by_comp: Dict[int, List[Tuple[int, int]]] = {}

    def add(self, f: Dict[int, int]) -> int:
        lead = max(f)
        c = f[lead]
        p = self.p
        inv = pow(c, -1, p)
        tail = {k: a * inv % p for k, a in f.items() if k != lead}
        comp, lm = self.order.term(lead)
        idx = len(self.entries)
        self.entries.append(_Entry(lead, comp, lm, tail, self.order.tdeg(lead)))
        self.by_comp.setdefault(comp, []).append((lm, idx))
        return idx

    def reduce(self, f: Dict[int, int], quot: Optional[list] = None,
               skip: Optional[int] = None) -> Dict[int, int]:
        """Full reduction of ``f`` (consumed).  ``quot`` collects (index, mono, coeff)."""
        p = self.p
        g = self.ring.guard
        term = self.order.term
        delta = self.order.delta
        by_comp = self.by_comp
        entries = self.entries
        rem: Dict[int, int] = {}
        heap = [-k for k in f]
        heapq.heapify(heap)
        while heap:
            k = -heapq.heappop(heap)
            c = f.pop(k, None)
            if c is None:
                continue
            comp, mono = term(k)
            hit = None
            cand = by_comp.get(comp)
            if cand:
                mg = mono | g
                for lm, idx in cand:
                    if (mg - lm) & g == g and idx != skip:
                        hit = idx
                        break
            if hit is None:
                rem[k] = c
                continue
            e = entries[hit]
            q = mono - e.lmono
            if quot is not None:
                quot.append((hit, q, c))
            sh = delta(q)
            for kk, cc in e.tail.items():
                k2 = kk + sh
                old = f.get(k2)
                if old is None:
                    f[k2] = (-c * cc) % p
                    heapq.heappush(heap, -k2)
                else:
                    v = (old - c * cc) % p
                    if v:
                        f[k2] = v
                    else:
                        del f[k2]
        return rem

    def interreduce(self):
        for i, e in enumerate(self.entries):
            e.tail = self.reduce(dict(e.tail), skip=i)

    def element(self, i: int) -> Dict[int, int]:
        e = self.entries[i]
        f = dict(e.tail)
        f[e.lead] = 1
        return f


def _pair_lcm_deg(ring, order, a: _Entry, b: _Entry):
    l = ring.lcm(a.lmono, b.lmono)
    return l, ring.mdeg(l) + order.twists[a.comp]


def run_buchberger(order, ring: GradedRing, gens: Sequence[Dict[int, int]],
                   reduced: bool = True) -> Tuple[_Engine, List[int]]:
    """Homogeneous Buchberger, degree by degree with the Gebauer-Moeller update.

    Returns the engine holding the basis and the indices (into ``gens``) of a
    minimal generating subset: in each degree the S-pairs are processed before
    the inputs, so an input survives reduction iff it is not generated by what
    came before.
    """
    eng = _Engine(order, ring)
    gens = [g for g in gens if g]
    rank1 = len(set(order.twists)) <= 1 and len(order.twists) == 1
    by_deg: Dict[int, List[int]] = {}
    for i, g in enumerate(gens):
        by_deg.setdefault(order.tdeg(max(g)), []).append(i)
    for d in by_deg:
        by_deg[d].sort(key=lambda i: max(gens[i]))
    pairs: Dict[int, List[Tuple[int, int, int]]] = {}
    degs = list(by_deg)
    heapq.heapify(degs)
    pending = set(degs)
    mingens: List[int] = []
    live_pairs: set = set()

    def update(h: int):
        eh = eng.entries[h]
        same = [i for lm, i in eng.by_comp.get(eh.comp, []) if i != h]
        lcms = {i: ring.lcm(eng.entries[i].lmono, eh.lmono) for i in same}
        coprime = {i: rank1 and ring.coprime(eng.entries[i].lmono, eh.lmono) for i in same}
        # drop old pairs by the chain criterion
        dead = []
        for (i, j) in live_pairs:
            if eng.entries[i].comp != eh.comp:
                continue
            lij = ring.lcm(eng.entries[i].lmono, eng.entries[j].lmono)
            if ring.divides(eh.lmono, lij) and lcms[i] != lij and lcms[j] != lij:
                dead.append((i, j))
        for pr in dead:
            live_pairs.discard(pr)
        C = list(same)
        D = []
        while C:
            g1 = C.pop()
            if coprime[g1]:
                D.append(g1)
                continue
            l1 = lcms[g1]
            if any(ring.divides(lcms[g2], l1) for g2 in C) or \
                    any(ring.divides(lcms[g2], l1) for g2 in D):
                continue
            D.append(g1)
        for g1 in D:
            if coprime[g1]:
                continue
            live_pairs.add((g1, h))
            dd = ring.mdeg(lcms[g1]) + order.twists[eh.comp]
            pairs.setdefault(dd, []).append((g1, h))
            if dd not in pending:
                pending.add(dd)
                heapq.heappush(degs, dd)

    while degs:
        d = heapq.heappop(degs)
        pending.discard(d)
        todo = sorted(pairs.pop(d, []))
        for (i, j) in todo:
            if (i, j) not in live_pairs:
                continue
            live_pairs.discard((i, j))
            a, b = eng.entries[i], eng.entries[j]
            l = ring.lcm(a.lmono, b.lmono)
            sa = order.delta(l - a.lmono)
            sb = order.delta(l - b.lmono)
            s = {k + sa: c for k, c in a.tail.items()}
            p = eng.p
            for k, c in b.tail.items():
                k2 = k + sb
                v = (s.get(k2, 0) - c) % p
                if v:
                    s[k2] = v
                else:
                    s.pop(k2, None)
            if not s:
                continue
            r = eng.reduce(s)
            if r:
                update(eng.add(r))
        for gi in by_deg.pop(d, []):
            r = eng.reduce(dict(gens[gi]))
            if r:
                mingens.append(gi)
                update(eng.add(r))
    if reduced:
        eng.interreduce()
    return eng, mingens


# ---------------------------------------------------------------------------
# raw (Vec-level) helpers shared by the other modules

def gb_raw(ring: GradedRing, twists: Sequence[int], vecs: Sequence[Vec], kind: str = "grevlex",
           blocks: Optional[Sequence[int]] = None, reduced: bool = True):
    order = TopOrder(ring, twists, kind, blocks)
    eng, ming = run_buchberger(order, ring, [to_keys(order, v) for v in vecs], reduced=reduced)
    return order, eng, ming


def mingens_raw(ring: GradedRing, twists: Sequence[int], vecs: Sequence[Vec]) -> List[Vec]:
    """A minimal homogeneous generating subset, in a deterministic order."""
    vecs = [v for v in vecs if v]
    _, _, ming = gb_raw(ring, twists, vecs, reduced=False)
    return [vecs[i] for i in ming]


def preimage_raw(ring: GradedRing, images: Sequence[Vec], target_twists: Sequence[int],
                 domain_twists: Sequence[int], sub: Sequence[Vec],
                 kind: str = "grevlex") -> List[Vec]:
    """Generators of ``{a in F : phi(a) in Q}``.

    ``phi`` sends basis vector ``j`` of the domain ``F`` (generator degrees
    ``domain_twists``) to ``images[j]`` in the target ``G``; ``Q`` is spanned
    by ``sub``.  Computed by elimination: a Groebner basis of the graph
    ``{(phi(e_j), e_j)} + {(q, 0)}`` under a block order in which target
    components dominate; the basis elements living purely in the domain block
    generate the preimage.
    """
    T = len(target_twists)
    D = len(domain_twists)
    if D == 0:
        return []
    twists = list(target_twists) + list(domain_twists)
    blocks = [1] * T + [0] * D
    gens: List[Vec] = []
    for j in range(D):
        v = {c: dict(t) for c, t in images[j].items()} if images[j] else {}
        if v and vec_degree(v, target_twists, ring) != domain_twists[j]:
            raise ValueError("map is not homogeneous of degree 0")
        v[T + j] = {0: 1}
        gens.append(v)
    gens.extend(q for q in sub if q)
    order, eng, _ = gb_raw(ring, twists, gens, kind, blocks, reduced=True)
    out = []
    for i, e in enumerate(eng.entries):
        if e.comp >= T:
            vec = from_keys(order, eng.element(i))
            out.append({c - T: t for c, t in vec.items()})
    return mingens_raw(ring, domain_twists, out)


# ---------------------------------------------------------------------------
# public wrappers

class Submodule:
    """Homogeneous submodule of a graded free module, given by generators."""

    def __init__(self, ambient: GradedFreeModule, generators: Sequence[FreeModuleElem] = ()):
        self.ambient = ambient
        gens = []
        for g in generators:
            if isinstance(g, Poly):
                g = FreeModuleElem(ambient, {0: g})
            if g.module != ambient:
                raise RingMismatch("generator outside the ambient module")
            if not g.is_homogeneous():
                raise ValueError("generators must be homogeneous")
            if not g.is_zero():
                gens.append(g)
        self.generators = gens

    @property
    def ring(self) -> GradedRing:
        return self.ambient.ring

    @classmethod
    def ideal(cls, ring: GradedRing, polys: Sequence[Poly]) -> "Submodule":
        F = GradedFreeModule(ring, (0,))
        return cls(F, [FreeModuleElem(F, {0: f}) for f in polys])

    def vecs(self) -> List[Vec]:
        return [g.vec for g in self.generators]

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        return f"Submodule(rank={self.ambient.rank}, gens={self.generators})"


class GroebnerBasis:
    def __init__(self, sub: Submodule, order: TermOrder, engine: _Engine, korder):
        self.submodule = sub
        self.order = order
        self.reduced = True
        self._engine = engine
        self._korder = korder
        F = sub.ambient
        self.elements = [FreeModuleElem(F, from_keys(korder, engine.element(i)))
                         for i in range(len(engine.entries))]
        self.elements.sort(key=lambda e: -max(to_keys(korder, e.vec)))

    def leading_terms(self) -> List[Tuple[int, int]]:
        """(component, packed monomial) of each element."""
        return [self._korder.term(max(to_keys(self._korder, e.vec))) for e in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def buchberger(gens: Submodule, ord: TermOrder = GREVLEX) -> GroebnerBasis:
    F = gens.ambient
    korder = TopOrder(F.ring, F.twists, ord.kind)
    if ord.module_extension == "pot":
        korder = TopOrder(F.ring, F.twists, ord.kind, blocks=[F.rank - j for j in range(F.rank)])
    eng, _ = run_buchberger(korder, F.ring, [to_keys(korder, v) for v in gens.vecs()])
    return GroebnerBasis(gens, ord, eng, korder)


def normal_form(f: FreeModuleElem, gb: GroebnerBasis) -> FreeModuleElem:
    if f.module != gb.submodule.ambient:
        raise RingMismatch("element and basis live in different modules")
    k = gb._korder
    rem = gb._engine.reduce(to_keys(k, f.vec))
    return FreeModuleElem(f.module, from_keys(k, rem))


def syzygy_module(gens: Submodule, ord: TermOrder = GREVLEX) -> Submodule:
    """Syzygies of the generators, in ``⊕ R(-deg g_i)``."""
    F = gens.ambient
    ring = F.ring
    degs = tuple(g.degree for g in gens.generators)
    syz = preimage_raw(ring, gens.vecs(), F.twists, degs, [], ord.kind)
    G = GradedFreeModule(ring, degs)
    return Submodule(G, [FreeModuleElem(G, v) for v in syz])


def colon_submodule(relations: Submodule, f: Poly) -> Submodule:
    """``{m in F : f*m in N}`` for the relation module ``N`` of ``F/N``."""
    if f.is_zero():
        raise ValueError("colon by zero")
    if not f.is_homogeneous():
        raise ValueError("colon element must be homogeneous")
    F = relations.ambient
    ring = F.ring
    vecs = colon_raw(ring, F.twists, relations.vecs(), f.raw)
    return Submodule(F, [FreeModuleElem(F, v) for v in vecs])


def colon_raw(ring: GradedRing, twists: Sequence[int], rels: Sequence[Vec],
              f: Dict[int, int]) -> List[Vec]:
    df = ring.mdeg(next(iter(f)))
    images = [{j: dict(f)} for j in range(len(twists))]
    dom = [t + df for t in twists]
    return preimage_raw(ring, images, twists, dom, rels)
