"""Executable versions of the regularity bounds, each returning a CheckResult."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from math import comb, prod
from typing import List, Optional, Sequence, Union

from .deficiency import (
    bmm_data,
    deficiency_profile,
    h0_module,
    hdeg,
    kdata,
    mod_h0,
    regularity_duality,
)
from .generic import (
    GenericityError,
    colon_quotient,
    filter_regular_element,
    gin_module,
    quotient_by_linear,
)
from .hilbert import (
    HilbertSeries,
    dimension_data,
    gs_residual,
    hilbert_function_gb,
    hilbert_polynomial,
    hilbert_series,
    regularity_index,
    staircase_hilbert,
)
from .polyring import GREVLEX, GradedRing, Poly
from .resolution import (
    NEG_INF,
    POS_INF,
    GradedModuleP,
    betti_table,
    depth_ab,
    gen_degree,
    regularity_betti,
)

Num = Union[int, float]

GIN_CAVEAT = "gin computed over F_p; the sequentially-CM statements for gin are characteristic-0 results"

# a right-hand side with more bits than this is kept as (base, exponent)
MAX_BITS = 1 << 20


class PowerBound:
    """``base ** exp + offset``, evaluated only when it is small enough."""

    def __init__(self, base: int, exp: int, offset: int = 0):
        self.base, self.exp, self.offset = base, exp, offset
        self.bits = exp * max(base, 2).bit_length()
        self.value = base ** exp + offset if self.bits <= MAX_BITS else None

    def exceeds(self, lhs: Num) -> bool:
        """``lhs < self``."""
        if lhs == NEG_INF:
            return True
        if lhs == POS_INF:
            return False
        if self.value is not None:
            return lhs < self.value
        # base >= 2 here, so the bound is at least 2^(exp) + offset
        return lhs.bit_length() + 1 < self.exp - abs(self.offset).bit_length()

    def __str__(self):
        return str(self.value) if self.value is not None else f"{self.base}^{self.exp}{self.offset:+d}"


@dataclass
class CheckResult:
    check_id: str
    status: str  # "pass" | "fail" | "skip"
    lhs: object = None
    rhs: object = None
    relation: str = ""
    inputs_digest: str = ""
    caveats: List[str] = field(default_factory=list)
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def slack(self):
        lhs, rhs = self.lhs, self.rhs
        if isinstance(rhs, PowerBound):
            if rhs.value is None:
                return None
            rhs = rhs.value
        if not isinstance(lhs, (int, float)) or not isinstance(rhs, (int, float)):
            return None
        if lhs in (NEG_INF, POS_INF) or rhs in (NEG_INF, POS_INF):
            return POS_INF if lhs == NEG_INF or rhs == POS_INF else NEG_INF
        return rhs - lhs

    def to_json(self) -> dict:
        return {"check_id": self.check_id, "status": self.status,
                "lhs": jsonable(self.lhs), "rhs": jsonable(self.rhs),
                "relation": self.relation, "slack": jsonable(self.slack),
                "inputs_digest": self.inputs_digest, "caveats": list(self.caveats),
                "reason": self.reason}


def jsonable(v):
    """Exact JSON form: infinities and integers beyond 2^53 become strings."""
    if isinstance(v, PowerBound):
        return str(v)
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, float):
        if v == POS_INF:
            return "inf"
        if v == NEG_INF:
            return "-inf"
        return v
    if isinstance(v, int):
        return v if abs(v) < (1 << 53) else str(v)
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return str(v)


def _cmp(check_id, lhs, rhs, rel, digest, caveats=None, reason=""):
    if isinstance(rhs, PowerBound):
        finite = lhs not in (NEG_INF, POS_INF)
        ok = rhs.exceeds(lhs if rel == "<" or not finite else lhs - 1)
    elif rel == "<=":
        ok = lhs <= rhs
    elif rel == "<":
        ok = lhs < rhs
    elif rel == "==":
        ok = lhs == rhs
    elif rel == ">=":
        ok = lhs >= rhs
    else:
        raise ValueError(rel)
    return CheckResult(check_id, "pass" if ok else "fail", lhs, rhs, rel, digest,
                       list(caveats or []), reason)


def _skip(check_id, reason, digest=""):
    return CheckResult(check_id, "skip", inputs_digest=digest, reason=reason)


# ---------------------------------------------------------------------------

class Analysis:
    """All invariants of one module, computed lazily and shared by the checks.

    ``ideal`` (the generators of ``I``) is given when ``M = R/I``; the checks
    about quotient rings need it.
    """

    def __init__(self, M: GradedModuleP, ideal: Optional[Sequence[Poly]] = None,
                 seed: int = 0, label: str = ""):
        self.M = M
        self.ring: GradedRing = M.ring
        self.n = M.ring.num_vars
        self.ideal = [f for f in ideal if not f.is_zero()] if ideal is not None else None
        self.seed = seed
        self.label = label
        self.certificates: List[dict] = []
        self.notes: List[str] = []

    @classmethod
    def of_ideal(cls, ring: GradedRing, polys: Sequence[Poly], seed: int = 0, label: str = ""):
        return cls(GradedModuleP.quotient_ring(ring, polys), polys, seed, label)

    # -- basic invariants
    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(repr(self.M.fingerprint()).encode()).hexdigest()[:16]

    @cached_property
    def betti(self):
        return betti_table(self.M)

    @cached_property
    def is_zero(self) -> bool:
        return not self.betti.nonzero()

    @cached_property
    def reg(self) -> Num:
        return regularity_betti(self.M)

    @cached_property
    def hs(self) -> HilbertSeries:
        return hilbert_series(self.M)

    @cached_property
    def hp(self):
        return hilbert_polynomial(self.hs)

    @cached_property
    def dims(self):
        return dimension_data(self.hs)

    @property
    def dim(self) -> int:
        return self.dims.dim

    @property
    def deg(self) -> int:
        return self.dims.degree

    @property
    def beg(self) -> Num:
        return self.dims.beg

    @cached_property
    def ri(self) -> Num:
        return regularity_index(self.hs)

    @cached_property
    def gen(self) -> Num:
        return gen_degree(self.M)

    @cached_property
    def depth(self) -> Optional[int]:
        return None if self.is_zero else depth_ab(self.M)

    @property
    def is_cm(self) -> bool:
        return not self.is_zero and self.depth == self.dim

    @cached_property
    def profile(self):
        return deficiency_profile(self.M)

    def K(self, i: int):
        if 0 <= i < len(self.profile.K):
            return self.profile.K[i]
        return kdata(self.M, i)

    def h(self, i: int):
        return self.profile.h(i)

    @cached_property
    def reg_duality(self) -> Num:
        return regularity_duality(self.M)

    @cached_property
    def hdeg(self) -> int:
        return hdeg(self.M).value

    @cached_property
    def hdeg_trace(self) -> dict:
        return hdeg(self.M).trace

    def hdeg_K(self, j: int) -> int:
        K = self.K(j)
        return 0 if K.is_zero else hdeg(K.module).value

    @cached_property
    def gen_cm(self) -> bool:
        return all(self.K(i).dims.dim <= 0 for i in range(max(self.dim, 0)))

    # -- quotient-ring data
    @property
    def cyclic(self) -> bool:
        return self.ideal is not None

    @cached_property
    def monomial(self) -> bool:
        return self.cyclic and all(len(f.raw) == 1 for f in self.ideal)

    @cached_property
    def has_linear_form(self) -> bool:
        return any(f.degree is not None and f.degree <= 1 for f in self.ideal or [])

    @cached_property
    def ideal_module(self) -> GradedModuleP:
        return GradedModuleP.ideal_module(self.ring, self.ideal)

    @cached_property
    def reg_I(self) -> Num:
        return regularity_betti(self.ideal_module)

    @cached_property
    def section3_ok(self) -> Optional[str]:
        """None when the standing hypotheses of the quotient-ring bounds hold."""
        if not self.cyclic:
            return "not a quotient ring R/I"
        if not self.ideal:
            return "I = 0"
        if self.n < 2:
            return "n < 2"
        if self.has_linear_form:
            return "I contains a linear form"
        return None

    @cached_property
    def bmm(self):
        return bmm_data(self.M, max(self.dim, 0), self.profile)

    # -- generic element
    @cached_property
    def fr(self):
        """``(x, certificate)`` for a form filter-regular on M and every K^i, or None."""
        mods = [self.M] + [k.module for k in self.profile.K if not k.is_zero]
        names = ["M"] + [f"K^{k.i}" for k in self.profile.K if not k.is_zero]
        try:
            x, cert = filter_regular_element(mods, self.seed, names=names)
        except GenericityError as exc:
            self.notes.append(str(exc))
            return None
        self.certificates.append(cert.to_json())
        return x, cert

    @cached_property
    def mod_x(self) -> Optional["Analysis"]:
        if self.fr is None:
            return None
        return Analysis(quotient_by_linear(self.M, self.fr[0]), seed=self.seed + 1)

    # -- generic initial ideal
    @cached_property
    def gin(self) -> Optional["Analysis"]:
        if not self.cyclic or not self.ideal:
            return None
        try:
            Mg, cert = gin_module(self.ring, self.ideal, GREVLEX, self.seed)
        except GenericityError as exc:
            self.notes.append(str(exc))
            return None
        self.certificates.append(cert.to_json())
        mons = [Poly(self.ring, {m: 1}) for m in (next(iter(v[0])) for v in Mg.relations)]
        return Analysis(Mg, mons, seed=self.seed)

    @cached_property
    def seq_cm(self) -> Optional[bool]:
        """Herzog-Sbarra criterion: K^i(R/I) and K^i(R/Gin I) have equal Hilbert functions."""
        g = self.gin
        if g is None:
            return None
        top = max(self.dim, g.dim)
        return all(self.K(i).series == g.K(i).series for i in range(top + 1))


def _an(M) -> Analysis:
    return M if isinstance(M, Analysis) else Analysis(M)


# ---------------------------------------------------------------------------
# dual pipelines and identities

def check_dual_regularity(M) -> CheckResult:
    A = _an(M)
    if A.is_zero:
        return _skip("dual_reg", "zero module", A.digest)
    return _cmp("dual_reg", A.reg, A.reg_duality, "==", A.digest)


def check_dual_regularity_K(M) -> List[CheckResult]:
    A = _an(M)
    out = []
    for k in A.profile.K:
        if k.is_zero:
            continue
        out.append(_cmp(f"dual_reg.K{k.i}", k.reg, regularity_duality(k.module), "==", A.digest))
    return out


def check_hilbert_oracle(M) -> CheckResult:
    """Series from the resolution against standard-monomial counts."""
    A = _an(M)
    if A.is_zero:
        return _skip("hilbert_oracle", "zero module", A.digest)
    top = int(A.reg) + A.n + 3
    bad = 0
    for j in range(0, top + 1):
        want = A.hs(j)
        got = hilbert_function_gb(A.M, j)
        if A.monomial:
            got2 = staircase_hilbert(A.ring, A.ideal, j)
            bad += got2 != want
        bad += got != want
    return _cmp("hilbert_oracle", bad, 0, "==", A.digest,
                reason="staircase" if A.monomial else "gb standard monomials")


def check_grothendieck_serre(M) -> CheckResult:
    A = _an(M)
    if A.is_zero:
        return _skip("gs_identity", "zero module", A.digest)
    r = int(A.reg)
    hmap = {i: A.h(i) for i in range(A.dim + 1)}
    worst = 0
    for j in range(-r - A.n - 5, r + 6):
        worst = max(worst, abs(gs_residual(A.hs, j, hmap)))
    return _cmp("gs_identity", worst, 0, "==", A.digest)


def check_EB2b(M) -> CheckResult:
    A = _an(M)
    if A.is_zero or not A.is_cm:
        return _skip("EB2b", "not Cohen-Macaulay", A.digest)
    return _cmp("EB2b", A.K(A.dim).reg, A.dim - A.beg, "==", A.digest)


def check_thm_B4(M, i: int) -> CheckResult:
    A = _an(M)
    cid = f"thm_B4.i={i}"
    if A.is_zero:
        return _skip(cid, "zero module", A.digest)
    rhs = A.dim * (A.hdeg - A.deg) - A.beg + i
    return _cmp(cid, A.K(i).reg, rhs, "<=", A.digest)


def check_lemma_B2(M) -> CheckResult:
    A = _an(M)
    if A.is_zero:
        return _skip("lemma_B2", "zero module", A.digest)
    return _cmp("lemma_B2", A.reg, A.gen + A.hdeg - 1, "<=", A.digest)


def check_note_a(M) -> CheckResult:
    A = _an(M)
    if A.is_zero:
        return _skip("note_a", "zero module", A.digest)
    ok = A.hdeg >= A.deg and ((A.hdeg == A.deg) == A.is_cm)
    return CheckResult("note_a", "pass" if ok else "fail", A.hdeg, A.deg,
                       ">= (== iff CM)", A.digest, reason=f"CM={A.is_cm}")


def check_note_b(M) -> CheckResult:
    A = _an(M)
    if A.is_zero:
        return _skip("note_b", "zero module", A.digest)
    H0 = h0_module(A.M)
    ell = dimension_data(H0).degree if H0.gen_twists else 0
    Mbar = mod_h0(A.M)
    hbar = hdeg(Mbar).value if dimension_data(Mbar).dim >= 0 else 0
    # the two routes to the length of H^0 must agree as well
    ell_dual = 0 if A.K(0).is_zero else A.K(0).dims.degree
    if ell != ell_dual:
        return CheckResult("note_b", "fail", ell, ell_dual, "==", A.digest,
                           reason="length of H^0 differs between saturation and duality")
    return _cmp("note_b", A.hdeg, hbar + ell, "==", A.digest)


def check_lemma_B7bn(M) -> CheckResult:
    A = _an(M)
    if A.is_zero:
        return _skip("lemma_B7bn", "zero module", A.digest)
    return _cmp("lemma_B7bn", A.K(0).reg, -A.beg, "<=", A.digest)


def _b7cn_rhs(A: Analysis, i: int) -> int:
    return -A.beg + sum(comb(A.dim, j) * A.hdeg_K(j) for j in range(1, i + 1)) + i


def check_lemma_B7cn(M, i: int) -> CheckResult:
    A = _an(M)
    cid = f"lemma_B7cn.i={i}"
    if A.is_zero or not A.depth or not (1 <= i < A.dim):
        return _skip(cid, "needs depth > 0 and 1 <= i < d", A.digest)
    return _cmp(cid, A.K(i).reg, _b7cn_rhs(A, i), "<=", A.digest)


def check_remark_B7cn(M) -> CheckResult:
    """``K^{d-1} != 0`` forces strict inequality in the case ``i = d - 1``."""
    A = _an(M)
    cid = "remark_B7cn"
    if A.is_zero or not A.depth or A.dim < 2:
        return _skip(cid, "needs depth > 0 and d >= 2", A.digest)
    i = A.dim - 1
    if A.K(i).is_zero:
        return _skip(cid, "K^{d-1} = 0", A.digest)
    return _cmp(cid, A.K(i).reg, _b7cn_rhs(A, i), "<", A.digest)


def check_structure(M) -> List[CheckResult]:
    A = _an(M)
    if A.is_zero:
        return [_skip("struct", "zero module", A.digest)]
    d = A.dim
    out = [_cmp(f"struct.dimK.i={i}", A.K(i).dims.dim, i, "<=", A.digest) for i in range(d)]
    Kd = A.K(d)
    out.append(_cmp("struct.dimKd", Kd.dims.dim, d, "==", A.digest))
    out.append(_cmp("struct.depthKd", Kd.depth if Kd.depth is not None else NEG_INF,
                    min(2, d), ">=", A.digest))
    out.append(_cmp("struct.K_above_d", max((kdata(A.M, i).dims.dim for i in range(d + 1, A.n + 1)),
                                            default=-1), -1, "==", A.digest))
    return out


def check_lemma_A3(M) -> List[CheckResult]:
    """Both inequalities on ``0 -> I -> R -> R/I -> 0``, plus ``reg I = reg R/I + 1``."""
    A = _an(M)
    if not A.cyclic or not A.ideal or A.is_zero:
        return [_skip("lemma_A3", "needs R/I with 0 != I != R", A.digest)]
    rI, rS, rR = A.reg_I, A.reg, 0
    return [
        _cmp("lemma_A3.i", rR, max(rI, rS), "<=", A.digest),
        _cmp("lemma_A3.ii", rI, max(rR, rS + 1), "<=", A.digest),
        _cmp("reg_ideal", rI, rS + 1, "==", A.digest),
    ]


def _reg1(A: Analysis) -> Num:
    return max((i - A.K(i).dims.beg for i in range(1, A.dim + 1) if not A.K(i).is_zero),
               default=NEG_INF)


def check_lemma_A5(M) -> List[CheckResult]:
    A = _an(M)
    if A.is_zero or A.mod_x is None:
        return [_skip("lemma_A5", "no certified filter-regular form", A.digest)]
    B = A.mod_x
    return [_cmp("lemma_A5.lower", _reg1(A), B.reg, "<=", A.digest),
            _cmp("lemma_A5.upper", B.reg, A.reg, "<=", A.digest)]


def check_lemma_A7(M) -> List[CheckResult]:
    A = _an(M)
    out = []
    if A.is_zero:
        return [_skip("lemma_A7", "zero module", A.digest)]
    if A.mod_x is None:
        out.append(_skip("lemma_A7.i", "no certified filter-regular form", A.digest))
        out.append(_skip("lemma_A7.ii", "no certified filter-regular form", A.digest))
    else:
        B = A.mod_x
        end_h0 = -A.K(0).dims.beg
        out.append(_cmp("lemma_A7.i", A.reg, max(B.reg, end_h0), "==", A.digest))
        out.append(_cmp("lemma_A7.ii", A.reg, max(B.reg, A.ri), "==", A.digest))
    if A.is_cm:
        out.append(_cmp("lemma_A7.iii", A.reg, A.ri + A.dim, "==", A.digest))
    else:
        out.append(_skip("lemma_A7.iii", "not Cohen-Macaulay", A.digest))
    out.append(_cmp("ri_le_reg", A.ri, A.reg, "<=", A.digest))
    return out


def check_lemma_B7(M) -> List[CheckResult]:
    """Length additivity along ``0 -> (K^{i+1}/xK^{i+1})(1) -> K^i(M/xM) -> 0:_{K^i} x -> 0``."""
    A = _an(M)
    if A.is_zero or A.mod_x is None:
        return [_skip("lemma_B7", "no certified filter-regular form", A.digest)]
    x = A.fr[0]
    B = A.mod_x
    out = []
    for i in range(A.dim + 1):
        left = B.K(i).series
        Ki, Ki1 = A.K(i), A.K(i + 1)
        if Ki1.is_zero:
            quo = HilbertSeries({}, A.n)
        else:
            quo = hilbert_series(quotient_by_linear(Ki1.module, x)).shift(-1)
        if Ki.is_zero:
            ann = {}
        else:
            hs_c = hilbert_series(colon_quotient(Ki.module, x))
            ann = dict(Ki.series.numerator)
            for e, c in hs_c.numerator.items():
                ann[e] = ann.get(e, 0) - c
        total = dict(quo.numerator)
        for e, c in ann.items():
            total[e] = total.get(e, 0) + c
        ok = left == HilbertSeries(total, A.n)
        out.append(CheckResult(f"lemma_B7.i={i}", "pass" if ok else "fail",
                               repr(left), repr(HilbertSeries(total, A.n)), "==", A.digest))
    return out


# ---------------------------------------------------------------------------
# quotient rings: bounds in terms of reg I

def c1_bound(n: int, r: int, i: int):
    if i == 1:
        return 4 * r ** (n - 1) - 4 * r ** (n - 2)
    e = prod(range(n, n + i)) * 2 ** (i * (i - 1) // 2)
    return PowerBound(2 * r, e)


def claim7_bound(n: int, r: int, d: int) -> PowerBound:
    e = prod(range(n, n + d - 1)) * 2 ** ((d - 1) * (d - 2) // 2)
    return PowerBound(2 * r, e, -2 * r ** n - 2 * n + 2)


def check_thm_C1(S, i: int) -> CheckResult:
    A = _an(S)
    cid = f"thm_C1.i={i}"
    why = A.section3_ok
    if why:
        return _skip(cid, why, A.digest)
    if i < 1:
        return _skip(cid, "i >= 1 only", A.digest)
    r = int(A.reg_I)
    return _cmp(cid, A.K(i).reg, c1_bound(A.n, r, i), "<", A.digest)


def check_claim7(S) -> CheckResult:
    A = _an(S)
    cid = "claim7_aux"
    why = A.section3_ok
    if why:
        return _skip(cid, why, A.digest)
    if A.dim < 2:
        return _skip(cid, "d >= 2 only", A.digest)
    r = int(A.reg_I)
    return _cmp(cid, A.K(A.dim).reg, claim7_bound(A.n, r, A.dim), "<", A.digest)


def check_lemma_C2(S, i: int) -> List[CheckResult]:
    A = _an(S)
    cid = f"lemma_C2.i={i}"
    if not A.cyclic or not A.ideal or A.is_zero:
        return [_skip(cid, "needs R/I with 0 != I != R", A.digest)]
    if i < 1:
        return [_skip(cid, "i >= 1 only", A.digest)]
    if i - 1 >= len(A.bmm.Delta):
        # K^i = 0 beyond the dimension
        return [_cmp(cid, A.K(i).ri, 0, "<=", A.digest, reason="K^i = 0")]
    D = A.bmm.Delta[i - 1]
    rhs = PowerBound(2 * (1 + D), 2 ** (i - 1), -2)
    out = [_cmp(cid, A.K(i).ri, rhs.value if rhs.value is not None else rhs, "<=", A.digest)]
    if i == 1:
        nu0 = A.bmm.nu[0]
        mid = max(0, -nu0)
        out.append(_cmp("lemma_C2.sharp.lhs", A.K(1).ri, mid, "<=", A.digest))
        out.append(_cmp("lemma_C2.sharp.rhs", mid, 2 * A.bmm.Delta[0], "<=", A.digest))
    elif A.bmm.nu[i - 1:i]:
        out.append(_cmp(f"lemma_C2.nu.i={i}", A.K(i).ri, -A.bmm.nu[i - 1], "==", A.digest))
    return out


def check_lemma_C3(S, i: int, t_range: Optional[range] = None) -> CheckResult:
    A = _an(S)
    cid = f"lemma_C3.i={i}"
    why = A.section3_ok
    if why:
        return _skip(cid, why, A.digest)
    if not 0 <= i < A.dim:
        return _skip(cid, "needs 0 <= i < d", A.digest)
    r, rs = int(A.reg_I), int(A.reg)
    Ki = A.K(i)
    if t_range is None:
        lo = -int(max(Ki.reg, 0) if Ki.reg != NEG_INF else 0) - A.n - 3
        t_range = range(lo, rs + 2)
    h = A.h(i)
    worst = None
    for t in t_range:
        m = rs - t
        if m < i:
            # the binomial vanishes: the only way to respect the bound is h = 0
            if h(t) != 0:
                return CheckResult(cid, "fail", h(t), 0, "== (binomial vanishes)", A.digest,
                                   reason=f"t={t}")
            continue
        bound = r ** (A.n - i - 1) * comb(m, i)
        if not h(t) < bound:
            return CheckResult(cid, "fail", h(t), bound, "<", A.digest, reason=f"t={t}")
        if worst is None or bound - h(t) < worst[1] - worst[0]:
            worst = (h(t), bound, t)
    if worst is None:
        return CheckResult(cid, "pass", 0, 0, "<", A.digest, reason="all binomials vanish")
    return CheckResult(cid, "pass", worst[0], worst[1], "<", A.digest, reason=f"tightest t={worst[2]}")


def check_remark_C4(S, i: int) -> CheckResult:
    A = _an(S)
    cid = f"remark_C4.i={i}"
    why = A.section3_ok
    if why:
        return _skip(cid, why, A.digest)
    if not A.gen_cm:
        return _skip(cid, "not generalized Cohen-Macaulay", A.digest)
    if i < 1:
        return _skip(cid, "i >= 1 only", A.digest)
    r = int(A.reg_I)
    rhs = PowerBound(2 ** (i + 1) * (r ** (A.n - 1) - r ** (A.n - 2)), 2 ** (i - 1))
    return _cmp(cid, A.K(i).reg, rhs, "<", A.digest)


# ---------------------------------------------------------------------------
# special classes

def check_section4(S) -> List[CheckResult]:
    A = _an(S)
    out: List[CheckResult] = []
    dg = A.digest
    if A.is_zero or not A.cyclic:
        return [_skip("section4", "needs a nonzero R/I", dg)]
    d = A.dim
    # monomial and generalized CM
    if A.monomial and A.gen_cm:
        for i in range(d):
            K = A.K(i)
            out.append(_cmp(f"ED2.eq.i={i}", K.reg, K.dims.end, "==", dg))
            out.append(_cmp(f"ED2.le.i={i}", K.reg, 0, "<=", dg))
        out.append(_cmp("prop_D1", A.K(d).reg, d, "<=", dg))
    else:
        why = "not monomial" if not A.monomial else "not generalized Cohen-Macaulay"
        out.append(_skip("ED2", why, dg))
        out.append(_skip("prop_D1", why, dg))
    g = A.gin
    if g is None:
        out.append(_skip("cor_D3", "gin unavailable", dg))
        out.append(_skip("prop_D2i", "gin unavailable", dg))
        return out
    cav = [GIN_CAVEAT]
    out.append(CheckResult("gin_hilbert", "pass" if g.hs == A.hs else "fail",
                           repr(g.hs), repr(A.hs), "==", dg, cav))
    for i in range(g.dim + 1):
        out.append(_cmp(f"cor_D3.i={i}", g.K(i).reg, i, "<=", dg, cav))
    # lengths of K^i can only grow when passing to the generic initial ideal
    top = int(max(g.reg, A.reg)) + A.n + 3
    worst = 0
    for i in range(d + 1):
        for j in range(-top, top + 1):
            worst = min(worst, g.K(i).series(j) - A.K(i).series(j))
    out.append(_cmp("gin_K_ge", worst, 0, ">=", dg, cav))
    if A.seq_cm:
        for i in range(d + 1):
            out.append(_cmp(f"prop_D2i.i={i}", A.K(i).reg, i - A.beg, "<=", dg, cav,
                            reason="sequentially CM by the Herzog-Sbarra criterion"))
    else:
        out.append(_skip("prop_D2i", "Herzog-Sbarra criterion not met", dg))
    return out


# ---------------------------------------------------------------------------

def run_all_checks(M, extended: bool = True) -> List[CheckResult]:
    """Every applicable check on one module, in a fixed order."""
    A = _an(M)
    out: List[CheckResult] = []
    if A.is_zero:
        return [_skip("all", "zero module", A.digest)]
    d = A.dim
    out.append(check_dual_regularity(A))
    out.extend(check_dual_regularity_K(A))
    out.append(check_hilbert_oracle(A))
    out.append(check_grothendieck_serre(A))
    out.append(check_EB2b(A))
    out.extend(check_thm_B4(A, i) for i in range(d + 1))
    out.append(check_lemma_B2(A))
    out.append(check_note_a(A))
    out.append(check_note_b(A))
    out.append(check_lemma_B7bn(A))
    out.extend(check_lemma_B7cn(A, i) for i in range(1, max(d, 1)))
    out.append(check_remark_B7cn(A))
    out.extend(check_structure(A))
    if A.cyclic:
        out.extend(check_lemma_A3(A))
    out.extend(check_lemma_A5(A))
    out.extend(check_lemma_A7(A))
    if extended:
        out.extend(check_lemma_B7(A))
    if A.cyclic:
        for i in range(1, max(d, 1) + 1):
            out.append(check_thm_C1(A, i))
        out.append(check_claim7(A))
        for i in range(1, max(d, 1) + 1):
            out.extend(check_lemma_C2(A, i))
        for i in range(0, d):
            out.append(check_lemma_C3(A, i))
        for i in range(1, max(d, 1) + 1):
            out.append(check_remark_C4(A, i))
        out.extend(check_section4(A))
    return out


# ---------------------------------------------------------------------------
# finiteness spot check

def _monomial_antichains(ring: GradedRing, max_deg: int, min_deg: int = 2):
    monos = [m for d in range(min_deg, max_deg + 1) for m in ring.monomials_of_degree(d)]

    def rec(start, chosen):
        yield list(chosen)
        for k in range(start, len(monos)):
            m = monos[k]
            if any(ring.divides(c, m) or ring.divides(m, c) for c in chosen):
                continue
            chosen.append(m)
            yield from rec(k + 1, chosen)
            chosen.pop()

    for ch in rec(0, []):
        if ch:
            yield ch


@dataclass
class C5Report:
    n: int
    i: int
    r: int
    degree_bound: int
    ideals: int
    functions: int
    partial: bool
    fingerprints: List[tuple] = field(default_factory=list)


def spot_check_C5(n: int, i: int, r: int, budget: Optional[int] = None,
                  max_ideals: int = 20000) -> C5Report:
    """Distinct functions ``t -> length H^i_m(R/I)_t`` over monomial ideals with
    ``reg I <= r`` and no linear forms, enumerating minimal generating sets of
    degree at most ``budget`` (default ``r``, which already suffices since
    ``gen I <= reg I``)."""
    ring = GradedRing(n)
    bound = r if budget is None else budget
    seen = set()
    count = 0
    partial = False
    for gens in _monomial_antichains(ring, bound):
        if count >= max_ideals:
            partial = True
            break
        count += 1
        polys = [Poly(ring, {m: 1}) for m in gens]
        S = GradedModuleP.quotient_ring(ring, polys)
        if regularity_betti(S) + 1 > r:
            continue
        K = kdata(S, i)
        seen.add((tuple(K.series.numerator.items()), K.series.n))
    return C5Report(n, i, r, bound, count, len(seen), partial, sorted(seen))
