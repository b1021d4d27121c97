"""Standard graded polynomial rings over prime fields.

Monomials are packed into Python ints: variable ``x_i`` occupies bit field
``i`` (``x_1`` lowest) and the total degree sits in field ``n``.  Each field
is ``FIELD_BITS`` wide with its top bit kept clear as a guard, so

* multiplying monomials is integer addition,
* ``a`` divides ``b`` iff ``((b | G) - a) & G == G`` for the guard mask ``G``.

The packed form is what the Groebner engine works with; :class:`Monomial`,
:class:`Poly` and :class:`FreeModuleElem` are the user-facing wrappers.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

FIELD_BITS = 12
VALUE_MASK = (1 << (FIELD_BITS - 1)) - 1
MAX_EXPONENT = VALUE_MASK

DEFAULT_PRIME = 32003


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    if p % 3 == 0:
        return p == 3
    f = 5
    while f * f <= p:
        if p % f == 0 or p % (f + 2) == 0:
            return False
        f += 6
    return True


class RingMismatch(ValueError):
    pass


class GradedRing:
    """``F_p[x_1..x_n]`` with every variable in degree 1."""

    def __init__(self, num_vars: int, char_p: int = DEFAULT_PRIME,
                 names: Optional[Sequence[str]] = None):
        if num_vars < 1:
            raise ValueError("need at least one variable")
        if not is_prime(char_p):
            raise ValueError(f"characteristic {char_p} is not prime")
        self.num_vars = n = num_vars
        self.char_p = char_p
        if names is None:
            names = [f"x{i + 1}" for i in range(n)]
        names = list(names)
        if len(names) != n or len(set(names)) != n:
            raise ValueError("variable names must be distinct, one per variable")
        self.names = tuple(names)
        w = FIELD_BITS
        self.mono_bits = (n + 1) * w
        self.deg_shift = n * w
        # low n fields, used by grevlex keys and the packed GL action
        self.vars_mask = (1 << (n * w)) - 1
        self.guard = sum(1 << (i * w + w - 1) for i in range(n + 1))
        self._var_monos = tuple(self.pack(tuple(1 if j == i else 0 for j in range(n)))
                                for i in range(n))

    # -- identity ---------------------------------------------------------
    def _key(self):
        return (self.num_vars, self.char_p, self.names)

    def __eq__(self, other):
        return isinstance(other, GradedRing) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GradedRing(F_{self.char_p}[{', '.join(self.names)}])"

    # -- packed monomials -------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        w = FIELD_BITS
        m = 0
        d = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            m |= e << (i * w)
            d += e
        if d > MAX_EXPONENT:
            raise ValueError("total degree out of range")
        return m | (d << self.deg_shift)

    def unpack(self, m: int) -> Tuple[int, ...]:
        w = FIELD_BITS
        return tuple((m >> (i * w)) & VALUE_MASK for i in range(self.num_vars))

    def mdeg(self, m: int) -> int:
        return m >> self.deg_shift

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.pack([max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))])

    def coprime(self, a: int, b: int) -> bool:
        return all(x == 0 or y == 0 for x, y in zip(self.unpack(a), self.unpack(b)))

    def var(self, i: int) -> int:
        return self._var_monos[i]

    def monomials_of_degree(self, d: int) -> List[int]:
        """All packed monomials of degree ``d``, in lex-descending order."""
        if d < 0:
            return []
        out = []

        def rec(i, left, acc):
            if i == self.num_vars - 1:
                out.append(self.pack(acc + [left]))
                return
            for e in range(left, -1, -1):
                rec(i + 1, left - e, acc + [e])

        rec(0, d, [])
        return out

    def mono_str(self, m: int) -> str:
        parts = []
        for name, e in zip(self.names, self.unpack(m)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- element constructors ---------------------------------------------
    def poly(self, text_or_terms) -> "Poly":
        if isinstance(text_or_terms, str):
            return parse_poly(self, text_or_terms)
        return Poly(self, text_or_terms)

    def gen(self, i: int) -> "Poly":
        return Poly(self, {self.var(i): 1})

    def gens(self) -> List["Poly"]:
        return [self.gen(i) for i in range(self.num_vars)]

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {0: 1})


# ---------------------------------------------------------------------------
# term orders on monomials (user level; the engine uses packed keys)

@dataclass(frozen=True)
class TermOrder:
    kind: str = "grevlex"
    module_extension: str = "top"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown term order {self.kind!r}")
        if self.module_extension not in ("top", "pot"):
            raise ValueError(f"unknown module extension {self.module_extension!r}")

    def key(self, exps: Sequence[int]):
        if self.kind == "lex":
            return tuple(exps)
        return (sum(exps), tuple(-e for e in reversed(exps)))


GREVLEX = TermOrder("grevlex")
LEX = TermOrder("lex")


@dataclass(frozen=True)
class Monomial:
    exponents: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))


def compare_monomials(m1: Monomial, m2: Monomial, order: TermOrder = GREVLEX) -> int:
    """Return 1, 0 or -1 as ``m1`` is greater than, equal to, or less than ``m2``."""
    if len(m1.exponents) != len(m2.exponents):
        raise RingMismatch("monomials from different rings")
    k1, k2 = order.key(m1.exponents), order.key(m2.exponents)
    return (k1 > k2) - (k1 < k2)


# ---------------------------------------------------------------------------
# sparse polynomial helpers on {packed monomial: coeff} dicts

def padd(a: Dict[int, int], b: Dict[int, int], p: int, scale: int = 1, shift: int = 0) -> Dict[int, int]:
    """Return ``a + scale * m * b`` where ``m`` is the packed monomial ``shift``."""
    out = dict(a)
    for m, c in b.items():
        m2 = m + shift
        v = (out.get(m2, 0) + scale * c) % p
        if v:
            out[m2] = v
        else:
            out.pop(m2, None)
    return out


def pmul(a: Dict[int, int], b: Dict[int, int], p: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = m1 + m2
            v = (out.get(m, 0) + c1 * c2) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def pscale(a: Dict[int, int], s: int, p: int) -> Dict[int, int]:
    s %= p
    if not s:
        return {}
    return {m: c * s % p for m, c in a.items()}


class Poly:
    """Immutable sparse polynomial over ``F_p``."""

    def __init__(self, ring: GradedRing, terms=None):
        self.ring = ring
        p = ring.char_p
        clean: Dict[int, int] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                if isinstance(m, Monomial):
                    m = ring.pack(m.exponents)
                elif isinstance(m, tuple):
                    m = ring.pack(m)
                v = (clean.get(m, 0) + c) % p
                if v:
                    clean[m] = v
                else:
                    clean.pop(m, None)
        self._terms = clean

    @property
    def raw(self) -> Dict[int, int]:
        return self._terms

    @cached_property
    def terms(self) -> List[Tuple[Monomial, int]]:
        """Terms sorted descending in grevlex."""
        r = self.ring
        items = [(Monomial(r.unpack(m)), c) for m, c in self._terms.items()]
        items.sort(key=lambda t: GREVLEX.key(t[0].exponents), reverse=True)
        return items

    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len({self.ring.mdeg(m) for m in self._terms}) <= 1

    @property
    def degree(self) -> Optional[int]:
        if not self._terms:
            return None
        return max(self.ring.mdeg(m) for m in self._terms)

    def homogeneous_components(self) -> Dict[int, "Poly"]:
        comps: Dict[int, Dict[int, int]] = {}
        for m, c in self._terms.items():
            comps.setdefault(self.ring.mdeg(m), {})[m] = c
        return {d: Poly(self.ring, t) for d, t in sorted(comps.items())}

    def _check(self, other: "Poly"):
        if not isinstance(other, Poly):
            raise TypeError("expected Poly")
        if other.ring != self.ring:
            raise RingMismatch("operands live in different rings")

    def __add__(self, other):
        self._check(other)
        return Poly(self.ring, padd(self._terms, other._terms, self.ring.char_p))

    def __sub__(self, other):
        self._check(other)
        return Poly(self.ring, padd(self._terms, other._terms, self.ring.char_p, -1))

    def __neg__(self):
        return Poly(self.ring, pscale(self._terms, -1, self.ring.char_p))

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(self.ring, pscale(self._terms, other, self.ring.char_p))
        self._check(other)
        return Poly(self.ring, pmul(self._terms, other._terms, self.ring.char_p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self.ring, self._terms)


def poly_arith(a: Poly, b, op: str) -> Poly:
    """Dispatch helper: ``op`` is one of add, sub, mul, scalar."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scalar":
        if not isinstance(b, int):
            raise TypeError("scalar must be an int")
        return a * b
    raise ValueError(f"unknown op {op!r}")


def format_poly(ring: GradedRing, terms: Dict[int, int]) -> str:
    if not terms:
        return "0"
    p = ring.char_p
    items = sorted(terms.items(), key=lambda t: GREVLEX.key(ring.unpack(t[0])), reverse=True)
    out = []
    for m, c in items:
        # print coefficients in the symmetric range
        c = c if c <= p // 2 else c - p
        sign = "-" if c < 0 else "+"
        c = abs(c)
        ms = ring.mono_str(m)
        if ms == "1":
            body = str(c)
        elif c == 1:
            body = ms
        else:
            body = f"{c}*{ms}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# polynomial text grammar

class PolyParseError(ValueError):
    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.message = message
        self.column = column


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|([+-]))")


def parse_poly(ring: GradedRing, text: str, offset: int = 0) -> Poly:
    """Parse ``x^2 - 3*x*y`` style text.  Columns in errors are 1-based."""
    index = {name: i for i, name in enumerate(ring.names)}
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        mt = _TOKEN.match(stripped, pos)
        if not mt or mt.end() == pos:
            col = pos + 1
            while col <= len(stripped) and stripped[col - 1].isspace():
                col += 1
            raise PolyParseError(f"unexpected character {stripped[col - 1]!r}", offset + col)
        kind = mt.lastindex
        tokens.append((kind, mt.group(kind), offset + mt.start(kind) + 1))
        pos = mt.end()
    if not tokens:
        raise PolyParseError("empty polynomial", offset + 1)

    p = ring.char_p
    n = ring.num_vars
    terms: Dict[int, int] = {}
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else (None, None, offset + len(stripped) + 1)

    first = True
    while i < len(tokens):
        sign = 1
        kind, val, col = peek()
        if kind == 5:
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise PolyParseError("expected '+' or '-'", col)
        first = False
        coeff = 1
        exps = [0] * n
        saw_factor = False
        expect_factor = True
        while expect_factor:
            kind, val, col = peek()
            if kind == 1:
                coeff *= int(val)
                i += 1
            elif kind == 2:
                if val not in index:
                    raise PolyParseError(f"unknown variable {val!r}", col)
                i += 1
                e = 1
                if peek()[0] == 3:
                    i += 1
                    k2, v2, c2 = peek()
                    if k2 != 1:
                        raise PolyParseError("expected exponent", c2)
                    e = int(v2)
                    i += 1
                exps[index[val]] += e
            else:
                raise PolyParseError("expected coefficient or variable", col)
            saw_factor = True
            kind, val, col = peek()
            if kind == 4:
                i += 1
            elif kind == 2:
                # implicit product such as ``3x``
                pass
            else:
                expect_factor = False
        if not saw_factor:
            raise PolyParseError("empty term", peek()[2])
        m = ring.pack(exps)
        v = (terms.get(m, 0) + sign * coeff) % p
        if v:
            terms[m] = v
        else:
            terms.pop(m, None)
    return Poly(ring, terms)


# ---------------------------------------------------------------------------
# graded free modules and their elements

@dataclass(frozen=True)
class GradedFreeModule:
    """``⊕ R(-a_j)``: generator ``j`` sits in degree ``twists[j]``."""

    ring: GradedRing
    twists: Tuple[int, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.twists)

    def element(self, components) -> "FreeModuleElem":
        return FreeModuleElem(self, components)

    def basis(self, j: int) -> "FreeModuleElem":
        return FreeModuleElem(self, {j: self.ring.one()})


Vec = Dict[int, Dict[int, int]]  # component -> {packed monomial: coeff}


def vec_clean(v: Vec) -> Vec:
    return {c: t for c, t in v.items() if t}


def vec_degree(v: Vec, twists: Sequence[int], ring: GradedRing) -> Optional[int]:
    for comp, terms in v.items():
        for m in terms:
            return ring.mdeg(m) + twists[comp]
    return None


def vec_is_homogeneous(v: Vec, twists: Sequence[int], ring: GradedRing) -> bool:
    degs = {ring.mdeg(m) + twists[comp] for comp, t in v.items() for m in t}
    return len(degs) <= 1


def vec_add(a: Vec, b: Vec, p: int, scale: Dict[int, int] = None, s: int = 1) -> Vec:
    """``a + s * poly * b`` where ``poly`` defaults to 1."""
    out = {c: dict(t) for c, t in a.items()}
    mult = scale if scale is not None else {0: 1}
    for comp, terms in b.items():
        acc = out.get(comp, {})
        for m1, c1 in mult.items():
            for m2, c2 in terms.items():
                m = m1 + m2
                v = (acc.get(m, 0) + s * c1 * c2) % p
                if v:
                    acc[m] = v
                else:
                    acc.pop(m, None)
        if acc:
            out[comp] = acc
        else:
            out.pop(comp, None)
    return out


def vec_fingerprint(v: Vec) -> tuple:
    return tuple(sorted((c, tuple(sorted(t.items()))) for c, t in v.items() if t))


class FreeModuleElem:
    """Element of a :class:`GradedFreeModule`, stored sparsely by component."""

    def __init__(self, module: GradedFreeModule, components=None):
        self.module = module
        ring = module.ring
        p = ring.char_p
        comps: Vec = {}
        if components:
            for j, poly in dict(components).items():
                if not 0 <= j < module.rank:
                    raise IndexError(f"component {j} outside rank {module.rank}")
                if isinstance(poly, Poly):
                    if poly.ring != ring:
                        raise RingMismatch("component from a different ring")
                    terms = poly.raw
                else:
                    terms = {m: c % p for m, c in poly.items() if c % p}
                if terms:
                    comps[j] = dict(terms)
        self.vec: Vec = comps

    def is_zero(self) -> bool:
        return not self.vec

    def component(self, j: int) -> Poly:
        return Poly(self.module.ring, self.vec.get(j, {}))

    def is_homogeneous(self) -> bool:
        return vec_is_homogeneous(self.vec, self.module.twists, self.module.ring)

    @property
    def degree(self) -> Optional[int]:
        return vec_degree(self.vec, self.module.twists, self.module.ring)

    def __add__(self, other: "FreeModuleElem"):
        self._check(other)
        return FreeModuleElem(self.module, vec_add(self.vec, other.vec, self.module.ring.char_p))

    def __sub__(self, other: "FreeModuleElem"):
        self._check(other)
        return FreeModuleElem(self.module, vec_add(self.vec, other.vec, self.module.ring.char_p, s=-1))

    def scale(self, f: Poly) -> "FreeModuleElem":
        return FreeModuleElem(self.module, vec_add({}, self.vec, self.module.ring.char_p, scale=f.raw))

    def _check(self, other):
        if other.module != self.module:
            raise RingMismatch("elements of different free modules")

    def __eq__(self, other):
        return isinstance(other, FreeModuleElem) and self.module == other.module \
            and vec_fingerprint(self.vec) == vec_fingerprint(other.vec)

    def __hash__(self):
        return hash(vec_fingerprint(self.vec))

    def __repr__(self):
        ring = self.module.ring
        inner = ", ".join(f"{j}: {format_poly(ring, t)}" for j, t in sorted(self.vec.items()))
        return f"FreeModuleElem({{{inner}}})"
