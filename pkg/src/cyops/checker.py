"""CY-type property checks, Galois-group criteria and symmetric roots."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, lcm

import gmpy2
from gmpy2 import mpq, mpz
from sympy import factorint

from .constructions import annihilates_sym_power, sym_square_order, twist
from .core.ratfunc import RatFunc
from .core.series import Series
from .errors import CannotNormalize, CyopsError, NonIntegralResidue, NotMUM, NotSymPower
from .frobenius import local_structure, mum_flag
from .normal_form import (_structure_from_pieces, normal_form, normalized_pieces,
                          q_from_flag)
from .operators import (INFINITY, DOperator, Operator, _as_d, log_derivative_solution,
                        self_dual_witness_full, singular_points)

DEFAULT_DEPTH = 200
DEFAULT_PRIME_BOUND = 10 ** 6


# ---------------------------------------------------------------------------
# N-integrality


def n_integral_witness(f: Series, prime_bound: int = DEFAULT_PRIME_BOUND,
                       depth: int = DEFAULT_DEPTH):
    """Smallest N with N^m A_m integral for m < depth, or None.

    Per prime the exponent is e_p = max_m ceil(-v_p(A_m)/m). The search is
    abandoned (None) when a denominator prime exceeds ``prime_bound``, when
    a prime first shows up in the second half of the window, or when e_p
    over the whole window exceeds e_p over the first half by more than one.
    """
    f = f.power_part()
    if len(f) < depth:
        raise ValueError(f"need {depth} coefficients, have {len(f)}")
    a = f.coeffs[:depth]
    if a[0].denominator != 1:
        return None
    dens = [int(c.denominator) for c in a]
    D = lcm(*dens)
    if D == 1:
        return 1
    primes = factorint(D, limit=prime_bound)
    if any(p > prime_bound for p in primes):
        return None
    half = max(2, depth // 2)
    N = mpz(1)
    for p in primes:
        first_seen = None
        e_half = e_all = 0
        for m in range(1, depth):
            v = gmpy2.remove(dens[m], p)[1]
            if v == 0:
                continue
            if first_seen is None:
                first_seen = m
            e = -(-v // m)
            e_all = max(e_all, e)
            if m < half:
                e_half = max(e_half, e)
        if first_seen is None or first_seen >= half or e_all - e_half > 1:
            return None
        N *= mpz(p) ** e_all
    Nm = mpz(1)
    for c in a:
        if (Nm * c).denominator != 1:
            return None
        Nm *= N
    return int(N)


# ---------------------------------------------------------------------------
# CY-type verdict


@dataclass(frozen=True)
class PropertyResult:
    passed: bool
    witness: object = None
    detail: str = ""


@dataclass(frozen=True)
class CYVerdict:
    property_P: PropertyResult
    property_M: PropertyResult
    property_N: PropertyResult
    property_Q: PropertyResult
    property_S: PropertyResult
    depth: int
    prime_bound: int
    algebraic: bool | None = None          # order-1 operators only
    irreducibility: str = "not checked"

    @property
    def properties(self) -> dict:
        return {"P": self.property_P, "M": self.property_M, "N": self.property_N,
                "Q": self.property_Q, "S": self.property_S}

    @property
    def overall(self) -> bool:
        ok = all(r.passed for r in self.properties.values())
        if self.algebraic is not None:
            ok = ok and self.algebraic
        return ok


def _check_P(M: DOperator) -> PropertyResult:
    try:
        w = self_dual_witness_full(M)
    except NonIntegralResidue as e:
        return PropertyResult(False, None, str(e))
    if w is None:
        return PropertyResult(False, None, "no rational alpha with L alpha = alpha L^dual")
    return PropertyResult(True, w.alpha, f"convention: {w.convention}")


def check_cy_type(L: Operator, truncation: int = 30, prime_bound: int = DEFAULT_PRIME_BOUND,
                  depth: int = DEFAULT_DEPTH) -> CYVerdict:
    """Evaluate the properties (P), (M), (N), (Q), (S).

    N-integrality is checked on ``depth`` coefficients; failures are
    recorded in the verdict and never raised.
    """
    M = _as_d(L).monic()
    order = M.order
    trunc = max(truncation, depth + 2)
    P = _check_P(M)

    algebraic = None
    if order == 1:
        try:
            y2, _ = log_derivative_solution(M.coeff(0) * -2)
            algebraic = y2 is not None
        except NonIntegralResidue:
            algebraic = False

    try:
        flag = mum_flag(M, trunc)
    except NotMUM as e:
        skipped = PropertyResult(False, None, "requires (M)")
        return CYVerdict(P, PropertyResult(False, None, str(e)), skipped, skipped, skipped,
                         depth, prime_bound, algebraic)
    Mres = PropertyResult(True, flag.mum_exponent, f"indicial polynomial (T - {flag.mum_exponent})^{order}")

    pieces = normalized_pieces(flag)
    n0 = n_integral_witness(pieces[0], prime_bound, depth)
    Nres = PropertyResult(n0 is not None, n0, "f_0 / z^r")

    if order == 1:
        vac = PropertyResult(True, "vacuous", "order 1 has no q-coordinate or structure series")
        return CYVerdict(P, Mres, Nres, vac, vac, depth, prime_bound, algebraic)

    q_over_z = q_from_flag(flag).mul_z(-1).power_part()
    nq = n_integral_witness(q_over_z, prime_bound, depth)
    Qres = PropertyResult(nq is not None, nq, "q / z")

    alphas = _structure_from_pieces(pieces)
    ns = [n_integral_witness(a, prime_bound, depth) for a in alphas]
    Sres = PropertyResult(all(x is not None for x in ns), tuple(ns), "alpha_1 .. alpha_n")
    return CYVerdict(P, Mres, Nres, Qres, Sres, depth, prime_bound, algebraic)


# ---------------------------------------------------------------------------
# symmetric roots


def _is_one(Y: Series) -> bool:
    c = Y.power_part().coeffs
    return bool(c) and c[0] == 1 and all(x == 0 for x in c[1:])


def reconstruct_sym_root(L: Operator, truncation: int = 40) -> DOperator:
    """Order-2 operator P with Sym^n(P) equal to the monic form of L.

    Writing L = D^(n+1) + a_n D^n + a_(n-1) D^(n-1) + ..., a symmetric power
    of D^2 + b_1 D + b_2 has a_n = n(n+1) b_1 / 2. Twisting a_n away leaves
    Sym^n(D^2 + c) whose next coefficient is binom(n+2, 3) c. The candidate
    is then checked exactly, so no truncation enters the result; the
    ``truncation`` argument only bounds the Y-invariant pre-check at a MUM
    point.
    """
    M = _as_d(L).monic()
    n = M.order - 1
    if n < 2:
        raise ValueError("symmetric roots need an operator of order at least 3")
    if n >= 3:
        try:
            nf = normal_form(M, truncation)
        except NotMUM:
            nf = None
        if nf is not None and not all(_is_one(Y) for Y in nf.y_invariants):
            raise NotSymPower("some Y-invariant differs from 1")
    u = M.coeff(n) * mpq(1, n + 1)
    c = twist(M, u).coeff(n - 1) * mpq(1, comb(n + 2, 3))
    P = twist(DOperator([c, 0, 1]), -u * mpq(1, n))
    if not annihilates_sym_power(M, P, n):
        raise NotSymPower("L is not a symmetric power of an order-2 operator")
    return P


# ---------------------------------------------------------------------------
# Galois classification


@dataclass(frozen=True)
class GaloisVerdict:
    ambient: str
    classification: str
    evidence: tuple = ()
    sym_root: DOperator | None = None


def _ambient(order: int) -> str:
    if order == 1:
        return "trivial or Z/2"
    return f"Sp_{order}" if order % 2 == 0 else f"SO_{order}"


def _conifold_like(L: DOperator):
    pts, _ = singular_points(L)
    for p in list(pts) + [INFINITY]:
        if p == 0:
            continue
        try:
            ls = local_structure(L, p, 16)
        except CyopsError:
            continue
        if 2 in ls.block_sizes:
            return p
    return None


def galois_classify(L: Operator, truncation: int = 30) -> GaloisVerdict:
    """Tiered guess at the differential Galois group of a CY-type operator.

    Only "SL2-proven" is a proof (an exact symmetric-power identity); the
    other labels rest on the classification of possible groups and assume
    the CY-type hypotheses.
    """
    M = _as_d(L).monic()
    order = M.order
    ambient = _ambient(order)
    ev = []
    if order == 1:
        try:
            y2, _ = log_derivative_solution(M.coeff(0) * -2)
        except NonIntegralResidue:
            y2 = None
        ev.append(("solution squared is rational", y2 is not None))
        return GaloisVerdict(ambient, "order-1 algebraic" if y2 is not None else "undetermined",
                             tuple(ev))
    if order == 2:
        ev.append(("order two: ambient group Sp_2 = SL_2", True))
        return GaloisVerdict(ambient, "SL2-criterion", tuple(ev))

    ys = list(normal_form(M, truncation).y_invariants) if order >= 4 else []
    ones = [_is_one(Y) for Y in ys]
    for i, one in enumerate(ones, start=1):
        ev.append((f"Y_{i} = 1", one))

    if all(ones):
        try:
            P = reconstruct_sym_root(M, truncation)
            ev.append(("symmetric root reconstructed and verified", True))
            return GaloisVerdict(ambient, "SL2-proven", tuple(ev), P)
        except CyopsError as e:
            ev.append((f"symmetric root reconstruction: {e}", False))

    if order % 2 == 0 and ones and ones[0]:
        return GaloisVerdict(ambient, "SL2-criterion", tuple(ev))
    if order % 2 == 1 and order > 5 and ones[1]:
        if order == 7 and not ones[0]:
            return GaloisVerdict(ambient, "G2-candidate", tuple(ev))
        return GaloisVerdict(ambient, "SL2-criterion", tuple(ev))
    if order == 4:
        k = sym_square_order(M, truncation)
        ev.append((f"symmetric square order = {k}", k == 10))
        p = _conifold_like(M)
        ev.append((f"Jordan block of size two at {p}", p is not None))
        if k == 10 or p is not None:
            return GaloisVerdict(ambient, "full-ambient-heuristic", tuple(ev))
    return GaloisVerdict(ambient, "undetermined", tuple(ev))


# ---------------------------------------------------------------------------
# order-7 coefficient relations


@dataclass(frozen=True)
class Order7Relations:
    twisted: DOperator
    u: RatFunc                      # twist D -> D - u with u = a_6/7
    g_rational: bool                # u is the log-derivative of a rational g
    relations: dict = field(default_factory=dict)

    @property
    def self_duality_relations(self) -> bool:
        return all(self.relations[k] for k in ("a4", "a2", "a0"))


def order7_relations(L: Operator, strict: bool = False) -> Order7Relations:
    """Check the coefficient relations of the twisted monic form
    D^7 + sum_{i<=5} a_i D^i.

    ``a4``, ``a2``, ``a0`` follow from self-duality::

        a4 = 5/2 a5'
        a2 = -5/2 a5''' + 3/2 a3'
        a0 = 1/2 a1' - 1/4 a3''' + 1/2 a5^(5)

    ``a3 = 3 a5'' + a5^2/4`` from Y_2 = 1 and
    ``a1`` (together with ``a3``) characterises Y_1 = Y_2 = 1. With
    ``strict`` the twist must come from a rational g (integral residues of
    a_6/7), otherwise :class:`CannotNormalize` is raised.
    """
    M = _as_d(L).monic()
    if M.order != 7:
        raise ValueError("order7_relations needs an operator of order 7")
    u = M.coeff(6) * mpq(1, 7)
    try:
        g, _ = log_derivative_solution(u)
        g_rational = g is not None
    except NonIntegralResidue:
        g_rational = False
    if strict and not g_rational:
        raise CannotNormalize("a_6/7 is not the log-derivative of a rational function")
    R = twist(M, u)
    a = [R.coeff(i) for i in range(7)]
    assert a[6].is_zero()
    a5 = a[5]
    d = [a5.derivative(k) if k else a5 for k in range(6)]
    h = mpq(1, 2)
    rel = {
        "a4": a[4] == d[1] * mpq(5, 2),
        "a2": a[2] == d[3] * mpq(-5, 2) + a[3].derivative() * mpq(3, 2),
        "a0": a[0] == a[1].derivative() * h - a[3].derivative(3) * mpq(1, 4) + d[5] * h,
        "a3": a[3] == d[2] * 3 + a5 * a5 * mpq(1, 4),
        "a1": a[1] == (d[4] * mpq(5, 7) + d[2] * a5 * mpq(22, 49)
                       + d[1] * d[1] * mpq(295, 784) + a5 * a5 * a5 * mpq(9, 686)),
    }
    return Order7Relations(R, u, g_rational, rel)
