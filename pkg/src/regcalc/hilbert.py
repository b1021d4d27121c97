"""Hilbert series, Hilbert polynomials, regularity index and dimension data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Mapping, Sequence, Union

from .groebner import gb_raw
from .polyring import GradedRing, Poly, Vec
from .resolution import NEG_INF, POS_INF, GradedModuleP, betti_table


def _binom_at(j: int, k: int) -> int:
    """``C(j, k)`` for ``j >= 0`` and 0 for ``j < 0``; the combinatorial count."""
    return comb(j, k) if j >= 0 else 0


class HilbertSeries:
    """``num(t) / (1 - t)^n``; ``num`` may have negative exponents."""

    def __init__(self, numerator: Mapping[int, int], n: int):
        self.numerator: Dict[int, int] = {e: c for e, c in sorted(numerator.items()) if c}
        self.n = n

    def __call__(self, j: int) -> int:
        """``H(j)``, the coefficient of ``t^j``."""
        n = self.n
        return sum(c * _binom_at(j - e + n - 1, n - 1) for e, c in self.numerator.items())

    def values(self, lo: int, hi: int) -> List[int]:
        return [self(j) for j in range(lo, hi + 1)]

    def is_zero(self) -> bool:
        return not self.numerator

    def shift(self, a: int) -> "HilbertSeries":
        """Series of ``M(-a)``."""
        return HilbertSeries({e + a: c for e, c in self.numerator.items()}, self.n)

    @property
    def top(self) -> int:
        return max(self.numerator) if self.numerator else 0

    def reduced(self):
        """``(Q, d)`` with ``num = (1-t)^(n-d) Q`` and ``Q(1) != 0``."""
        q = dict(self.numerator)
        d = self.n
        while q and sum(q.values()) == 0 and d > 0:
            # synthetic division by (1 - t), working from the low end
            lo, hi = min(q), max(q)
            out, carry = {}, 0
            for e in range(lo, hi):
                carry += q.get(e, 0)
                if carry:
                    out[e] = carry
            q = out
            d -= 1
        return q, d

    def __eq__(self, other):
        return isinstance(other, HilbertSeries) and (self.numerator, self.n) == (other.numerator, other.n)

    def __hash__(self):
        return hash((tuple(self.numerator.items()), self.n))

    def __repr__(self):
        terms = " + ".join(f"{c}*t^{e}" for e, c in self.numerator.items()) or "0"
        return f"({terms})/(1-t)^{self.n}"


class HilbertPolynomial:
    """Polynomial in the monomial basis with exact rational coefficients."""

    def __init__(self, coeffs: Sequence[Fraction]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @classmethod
    def interpolate(cls, points: Sequence[int], values: Sequence[int]) -> "HilbertPolynomial":
        """Lagrange interpolation through ``(points[i], values[i])``."""
        total = [Fraction(0)] * len(points)
        for i, (xi, yi) in enumerate(zip(points, values)):
            if not yi:
                continue
            basis = [Fraction(1)]
            denom = 1
            for k, xk in enumerate(points):
                if k == i:
                    continue
                basis = [Fraction(0)] + basis
                for m in range(len(basis) - 1):
                    basis[m] -= xk * basis[m + 1]
                denom *= xi - xk
            for m, b in enumerate(basis):
                total[m] += b * yi / denom
        return cls(total)

    def __call__(self, t) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def value(self, t: int) -> int:
        v = self(t)
        if v.denominator != 1:
            raise ArithmeticError(f"Hilbert polynomial not integral at {t}")
        return int(v)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, HilbertPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c:
                parts.append(f"{c}" + (f"*t^{k}" if k > 1 else "*t" if k == 1 else ""))
        return " + ".join(parts)


@dataclass(frozen=True)
class DimensionData:
    dim: int
    degree: int
    beg: Union[int, float]
    end: Union[int, float]


# ---------------------------------------------------------------------------

def hilbert_series(M: GradedModuleP) -> HilbertSeries:
    num: Dict[int, int] = {}
    for (i, j), b in betti_table(M).nonzero().items():
        num[j] = num.get(j, 0) + (-1) ** i * b
    return HilbertSeries(num, M.ring.num_vars)


def _as_series(X) -> HilbertSeries:
    return X if isinstance(X, HilbertSeries) else hilbert_series(X)


def hilbert_polynomial(M) -> HilbertPolynomial:
    hs = _as_series(M)
    n = hs.n
    if hs.is_zero():
        return HilbertPolynomial([])
    # the binomial expression is polynomial in j as soon as j >= top - n + 1
    start = hs.top
    pts = list(range(start, start + n))
    return HilbertPolynomial.interpolate(pts, [hs(j) for j in pts])


def regularity_index(M) -> Union[int, float]:
    """Largest ``j`` with ``H(j) != P(j)``, or ``-inf`` if there is none."""
    hs = _as_series(M)
    if hs.is_zero():
        return NEG_INF
    P = hilbert_polynomial(hs)
    j = hs.top - hs.n
    # below beg, H vanishes and P has at most deg P roots
    floor = min(hs.numerator) - max(P.degree, 0) - 2
    while j >= floor:
        if hs(j) != P(j):
            return j
        j -= 1
    return NEG_INF


def dimension_data(M) -> DimensionData:
    hs = _as_series(M)
    if hs.is_zero():
        return DimensionData(-1, 0, POS_INF, NEG_INF)
    q, d = hs.reduced()
    degree = sum(q.values())
    beg = min(hs.numerator)
    end = POS_INF if d >= 1 else max(q)
    return DimensionData(d, degree, beg, end)


def gs_residual(M, j: int, h: Mapping[int, Callable[[int], int]]) -> int:
    """``(H(j) - P(j)) - sum_i (-1)^i h_i(j)``; zero by Grothendieck-Serre."""
    hs = _as_series(M)
    P = hilbert_polynomial(hs)
    lhs = hs(j) - P.value(j)
    return lhs - sum((-1) ** i * hi(j) for i, hi in h.items())


# ---------------------------------------------------------------------------
# independent oracles

def _monomial_exps(ring: GradedRing, gens) -> List[int]:
    out = []
    for g in gens:
        if isinstance(g, Poly):
            raw = g.raw
        elif isinstance(g, dict):
            raw = g
        else:
            raw = {ring.pack(g): 1}
        if len(raw) != 1:
            raise ValueError("staircase count needs monomial generators")
        out.append(next(iter(raw)))
    return out


def staircase_hilbert(ring: GradedRing, gens, j: int) -> int:
    """Number of degree-``j`` monomials outside the monomial ideal ``gens``."""
    if hasattr(gens, "vecs"):
        gens = [v[0] for v in gens.vecs() if v]
    lead = _monomial_exps(ring, gens)
    if j < 0:
        return 0
    g = ring.guard
    return sum(1 for m in ring.monomials_of_degree(j)
               if not any((m | g) - u & g == g for u in lead))


def hilbert_function_gb(M: GradedModuleP, j: int) -> int:
    """``dim M_j`` by counting standard monomials of the leading-term module."""
    r = M.ring
    order, eng, _ = gb_raw(r, M.gen_twists, M.relations)
    leads: Dict[int, List[int]] = {}
    for e in eng.entries:
        leads.setdefault(e.comp, []).append(e.lmono)
    return sum(staircase_hilbert(r, [{u: 1} for u in leads.get(c, [])], j - a)
               for c, a in enumerate(M.gen_twists))


def hilbert_function_linalg(M: GradedModuleP, j: int) -> int:
    """``dim F_j - rank N_j`` by Gaussian elimination over ``F_p``."""
    r = M.ring
    p = r.char_p
    cols: Dict[tuple, int] = {}
    for c, a in enumerate(M.gen_twists):
        if j - a >= 0:
            for m in r.monomials_of_degree(j - a):
                cols[(c, m)] = len(cols)
    rows = []
    for v in M.relations:
        dv = _vec_deg(r, M.gen_twists, v)
        if dv > j:
            continue
        for u in r.monomials_of_degree(j - dv):
            rows.append({cols[(c, m + u)]: a for c, t in v.items() for m, a in t.items()})
    return len(cols) - _rank_mod_p(rows, p)


def _vec_deg(r, twists, v: Vec) -> int:
    c, t = next(iter(v.items()))
    return r.mdeg(next(iter(t))) + twists[c]


def _rank_mod_p(rows: List[Dict[int, int]], p: int) -> int:
    pivots: Dict[int, Dict[int, int]] = {}
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {k: a * inv % p for k, a in row.items()}
                break
            c = row[lead]
            for k, a in piv.items():
                w = (row.get(k, 0) - c * a) % p
                if w:
                    row[k] = w
                else:
                    row.pop(k, None)
    return len(pivots)
