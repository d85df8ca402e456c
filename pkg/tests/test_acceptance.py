"""Acceptance criteria; each test carries a ``criterion`` marker and the
terminal summary prints one PASS/FAIL line per criterion."""

import sys
import time
from math import factorial

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from cyops import corpus
from cyops.checker import check_cy_type, galois_classify, order7_relations, reconstruct_sym_root
from cyops.constructions import pullback_monomial, sym_power_order2, sym_square_order, twist
from cyops.core.poly import Poly
from cyops.core.ratfunc import RatFunc
from cyops.frobenius import flag_annihilated, local_basis, local_structure, mum_flag
from cyops.normal_form import lambert_coefficients, normal_form, prody_check, q_coordinate
from cyops.operators import (INFINITY, DOperator, apply, dual, indicial, local_theta_at,
                             multiply, self_dual_witness, singular_points, to_d_form)

R_NAMES = ["R1", "R2", "R3", "R4", "R5"]

Q_TABLE = {
    "R1": [7040, 67555904, 747082784768, 8968272297124128],
    "R2": [1152, 2150976, 4983447552, 13054714896672],
    "R3": [5562, 49552317, 547802062578, 6855142017357054],
    "R4": [72576, 8462979648, 1230038144557056, 203018472128017391904],
    "R5": [20200320, 689499895026240, 29916247864887732510720,
           1488739080271271648779215102240],
}

LAMBERT_TABLE = {
    "R1": [768, -136800, 35597568, -5313408000, -6059212935936],
    "R2": [256, 45504, 20254464, 14135932800, 12870108663552],
    "R3": [1485, mpq(9853515, 8), 2555194005, 8549298943740, 37455896889425700],
    "R4": [29440, 277414560, 7671739956480, 346114703998149120, 20536396999367861894400],
    "R5": [17342208, 42976872163296, 380850322188446486784, 5581133974953140362085043072,
           108045504354230644224717527051669760],
}


def crit(number, title, limit):
    return pytest.mark.criterion(number, title, limit)


class Clock:
    def __init__(self, limit):
        self.limit = limit
        self.start = time.perf_counter()

    def check(self):
        elapsed = time.perf_counter() - self.start
        assert elapsed < self.limit, f"took {elapsed:.1f} s, limit {self.limit} s"


@crit(1, "q-coordinates of R1-R5", 60)
def test_q_coordinates(ops):
    clock = Clock(60)
    for name in R_NAMES:
        q = q_coordinate(ops[name], 12)
        assert list(q.coeffs[:2]) == [0, 1]
        assert list(q.coeffs[2:6]) == Q_TABLE[name], name
    clock.check()


@crit(2, "Lambert tables N_{1,d,4} of R1-R5", 60)
def test_lambert_tables(ops):
    clock = Clock(60)
    for name in R_NAMES:
        nf = normal_form(ops[name], 16)
        lam = lambert_coefficients(nf.y_invariants[0], 4, 5)
        assert list(lam.coefficients) == LAMBERT_TABLE[name], name
        assert lam.is_integral() == (name != "R3")
    clock.check()


@crit(3, "quintic instanton number 5 N_1 = 2875", 5)
def test_quintic_instanton(quintic):
    clock = Clock(5)
    nf = normal_form(quintic, 10)
    lam = lambert_coefficients(nf.y_invariants[0], 3, 1)
    assert lam.coefficients[0] == 575
    assert 5 * lam.coefficients[0] == 2875
    clock.check()


@crit(4, "CY-type verdicts for quintic, E_tilde, R1-R5 at depth 200", 300)
def test_cy_verdicts(ops):
    clock = Clock(300)
    for name in ["quintic", "E_tilde"] + R_NAMES:
        L = ops[name]
        v = check_cy_type(L, depth=200)
        assert v.overall, (name, v)
        assert v.depth == 200 and v.prime_bound == 10 ** 6
        alpha = v.property_P.witness
        M = to_d_form(L).monic()
        a = DOperator.mult(alpha)
        assert M * a == a * dual(M)
        theta0 = indicial(L, 0).polynomial
        r = v.property_M.witness
        assert theta0 == Poly([-r, 1]) ** L.order
        assert isinstance(v.property_N.witness, int) and v.property_N.witness >= 1
    clock.check()


# --- criterion 5: property suites -------------------------------------------

small_ops = st.builds(
    lambda cs, lead: DOperator([RatFunc(Poly(c)) for c in cs] + [RatFunc(Poly(lead))]),
    st.lists(st.lists(st.integers(-4, 4), max_size=3), min_size=0, max_size=2),
    st.lists(st.integers(-4, 4), min_size=1, max_size=3).filter(lambda c: any(c)))

scales = st.sampled_from([mpq(p, q) for p in (-7, -3, -2, -1, 1, 2, 3, 5) for q in (1, 2, 3, 7)])
SELF_DUAL = ["quintic", "E", "E_tilde"] + R_NAMES
MUM_OPS = ["quintic", "E_tilde"] + R_NAMES


@crit(5, "property suites", 600)
def test_dual_suite(ops):
    count = [0]
    for L in ops.values():
        D = to_d_form(L)
        assert dual(dual(D)) == D
        count[0] += 1

    @settings(max_examples=150, deadline=None)
    @given(small_ops, small_ops)
    def prop(P, Q):
        assert dual(dual(P)) == P
        # the signed dual (-1)^ord times the formal adjoint reverses products
        assert dual(multiply(P, Q)) == multiply(dual(Q), dual(P))
        sign = (-1) ** (P.order + Q.order)
        adj = multiply(P, Q).formal_adjoint()
        assert dual(multiply(P, Q)) == DOperator([c * sign for c in adj.coeffs])
        count[0] += 3

    prop()
    assert count[0] >= 100


def _exponent_symmetry(L):
    n = 0
    pts, _ = singular_points(L)
    for p in sorted(set(pts) | {0}) + [INFINITY]:
        ind = indicial(L, p)
        assert ind.all_rational()
        e = ind.exponents
        k = len(e)
        assert len({e[i] + e[k - 1 - i] for i in range(k)}) == 1
        assert (mpq(2, k) * sum(e)).denominator == 1
        n += 3
    return n


@crit(5, "property suites", 600)
def test_exponent_symmetry_suite(ops):
    count = [0]
    for name in SELF_DUAL:
        assert self_dual_witness(ops[name]) is not None
        count[0] += 1 + _exponent_symmetry(ops[name])

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from(SELF_DUAL), scales)
    def prop(name, lam):
        L = pullback_monomial(ops[name], lam, 1)
        assert self_dual_witness(L) is not None
        count[0] += 1 + _exponent_symmetry(L)

    prop()
    assert count[0] >= 100


def _structure_symmetry(L, trunc=30):
    nf = normal_form(L, trunc)
    a, Y = nf.structure_series, nf.y_invariants
    for k in range(len(a)):
        assert a[k] == a[len(a) - 1 - k]
    for i in range(len(Y)):
        assert Y[i] == Y[len(Y) - 1 - i]
    return len(a) + len(Y)


@crit(5, "property suites", 600)
def test_structure_symmetry_suite(ops):
    count = [0]
    extra = [sym_power_order2(ops["E_tilde"], n) for n in (3, 4)]
    for L in [ops[n] for n in ["quintic"] + R_NAMES] + extra:
        count[0] += _structure_symmetry(L)

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from(["quintic", "R2", "R4"]), scales)
    def prop(name, lam):
        count[0] += _structure_symmetry(pullback_monomial(ops[name], lam, 1))

    prop()
    assert count[0] >= 100


@crit(5, "property suites", 600)
def test_prody_suite(ops):
    count = [0]
    for name, c in (("quintic", -3125), ("R2", None)):
        res = prody_check(ops[name], 30)
        assert res.holds
        if c is not None:
            assert res.constant == c
        count[0] += 2

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from(["quintic", "R2"]), scales)
    def prop(name, lam):
        res = prody_check(pullback_monomial(ops[name], lam, 1), 30)
        assert res.holds
        assert res.constant != 0
        count[0] += 2

    prop()
    assert count[0] >= 100


@crit(5, "property suites", 600)
def test_flag_annihilation_suite(ops):
    count = [0]
    for name, L in ops.items():
        if name in MUM_OPS:
            flag = mum_flag(L, 50)
            for y in flag.solutions:
                assert apply(L, y).is_zero()
            count[0] += len(flag.solutions)
        else:
            # no MUM point at 0: use the local basis at the point it picks
            p, sols = local_basis(L, 50)
            for y in sols:
                assert apply(local_theta_at(L, p), y).is_zero()
            count[0] += len(sols)

    @settings(max_examples=100, deadline=None)
    @given(st.sampled_from(MUM_OPS), scales, st.integers(1, 2))
    def prop(name, lam, h):
        L = pullback_monomial(ops[name], lam, h)
        assert flag_annihilated(L, mum_flag(L, 50))
        count[0] += 1

    prop()
    assert count[0] >= 100


@crit(6, "symmetric power round trip", 60)
def test_sym_round_trip(ops):
    clock = Clock(60)
    E = to_d_form(ops["E_tilde"]).monic()
    for n in (2, 3):
        P = reconstruct_sym_root(sym_power_order2(E, n))
        assert P == E
        u = RatFunc(Poly([1]), Poly([1, -1]))
        P = reconstruct_sym_root(twist(sym_power_order2(E, n), u))
        assert sym_power_order2(P, n) == twist(sym_power_order2(E, n), u)
        assert P == twist(E, u * mpq(1, n))
    D2 = DOperator([0, 0, 1])
    assert sym_power_order2(D2, 2) == DOperator([0, 0, 0, 1])
    assert sym_power_order2(D2, 3) == DOperator([0, 0, 0, 0, 1])
    clock.check()


@crit(7, "Galois classification", 300)
def test_galois(ops):
    clock = Clock(300)
    E = ops["E_tilde"]
    g = galois_classify(sym_power_order2(E, 3))
    assert g.classification == "SL2-proven"
    assert sym_power_order2(g.sym_root, 3) == sym_power_order2(E, 3)

    g = galois_classify(ops["R1"])
    assert g.classification == "G2-candidate" and g.ambient == "SO_7"
    Y = normal_form(ops["R1"], 16).y_invariants
    assert all(c == 0 for c in Y[1].coeffs[1:]) and any(c != 0 for c in Y[0].coeffs[1:])
    rel = order7_relations(ops["R1"]).relations
    assert rel["a4"] and rel["a2"] and rel["a0"] and rel["a3"]
    assert not rel["a1"]

    g = galois_classify(ops["quintic"])
    assert g.classification == "full-ambient-heuristic" and g.ambient == "Sp_4"
    assert sym_square_order(ops["quintic"]) == 10
    clock.check()


@crit(8, "Frobenius data of the quintic", 60)
def test_frobenius_quintic(quintic):
    f0 = mum_flag(quintic, 21).f(0)
    assert list(f0.coeffs) == [factorial(5 * m) // factorial(m) ** 5 for m in range(21)]
    ls = local_structure(quintic, mpq(1, 5 ** 5), 16)
    assert ls.exponents == [0, 1, 1, 2]
    assert [b for b in ls.block_sizes if b > 1] == [2]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
