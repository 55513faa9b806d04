"""Differential-operator expansion: hop polynomials and reassembly."""

from fractions import Fraction

import numpy as np
import pytest

from multiboson import (Polynomial, apply_to_polynomial, expand_diffop,
                        falling_factorial_coefficients, hop_coefficients, make_model,
                        sector_from_occupations)
from multiboson.fock import Sector


def test_polynomial_basics():
    p = Polynomial((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Polynomial(()).degree == -1
    assert not Polynomial((0, 0))
    q = Polynomial((0, 1))
    assert (p * q).coeffs == (0, 1, 2)
    assert (p + q).coeffs == (1, 3)
    assert (p - p).coeffs == ()
    assert (3 * q).coeffs == (0, 3)
    assert p(Fraction(1, 2)) == 2
    assert Polynomial((0, 0, 1)).derivative().coeffs == (0, 2)
    assert Polynomial((5,)).derivative().coeffs == ()


def test_falling_factorial_reconstruction():
    rng = np.random.default_rng(3)
    for _ in range(20):
        deg = int(rng.integers(0, 6))
        poly = Polynomial([int(rng.integers(-9, 10)) for _ in range(deg + 1)])
        cs = falling_factorial_coefficients(poly)
        for n in range(deg + 3):
            total = 0
            ff = 1
            for i, c in enumerate(cs):
                total += c * ff
                ff *= n - i
            assert total == poly(n)


MODEL_A = make_model(2, 1, (1, 1, 1), g=1)
SEC_A = sector_from_occupations(MODEL_A, (0, 0, 1))


def test_hop_micro_example():
    hop_a, hop_b, hop_c = hop_coefficients(MODEL_A, SEC_A)
    assert hop_a == Polynomial((1, -1))      # 1 - n
    assert hop_c == Polynomial((0, 0, 1))    # n^2
    assert not hop_b


def test_qes_zeros_random_sectors():
    rng = np.random.default_rng(11)
    for _ in range(40):
        r = int(rng.integers(1, 4))
        s = int(rng.integers(1, 4))
        k = [int(rng.integers(1, 4)) for _ in range(r + s)]
        n = r + s
        w = [Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5))) for _ in range(n)]
        g = Fraction(int(rng.integers(1, 7)), int(rng.integers(1, 4)))
        model = make_model(r, s, k, w=w, g=g)
        levels = [int(rng.integers(0, 8)) for _ in range(n)]
        anchor = [k[i] * levels[i] + int(rng.integers(0, k[i])) for i in range(n)]
        sec = sector_from_occupations(model, anchor)
        hop_a, _, hop_c = hop_coefficients(model, sec)
        assert hop_a(sec.n_top) == 0     # exact rational zero
        assert hop_c(0) == 0
        assert hop_a.degree == sum(k[:r]) * 0 + sum(k[r:])
        assert hop_c.degree == sum(k[:r])


def test_expand_micro_example():
    op = expand_diffop(MODEL_A, SEC_A)
    assert op.order == 2
    assert op.p[1] == Polynomial((1, 0, -1))   # g(1 - z^2)
    assert op.p[2] == Polynomial((0, 1))       # g z
    # P0 carries hopA(0) z + hopB(0) = z: the monomial matrix demands
    # H 1 = A(0) z, so P0 cannot vanish here
    assert op.p[0] == Polynomial((0, 1))


def test_expand_case_b_structure():
    model = make_model(2, 1, (1, 1, 2), w=[Fraction(1, 2), Fraction(-1, 3), 1],
                       wq={(0, 1): Fraction(2, 5), (2, 2): Fraction(1, 7)}, g=Fraction(3, 2))
    sec = sector_from_occupations(model, (2, 1, 4))
    op = expand_diffop(model, sec)
    assert op.order == 2
    assert op.p[2].degree == 3
    assert op.p[2].coeffs[3] == 4 * model.g
    assert op.p[2].coeffs[1] == model.g


def test_reassembly_exactness():
    model = make_model(2, 2, (1, 2, 2, 1), w=[Fraction(1, 3), -2, Fraction(3, 7), 1],
                       wq={(0, 0): Fraction(1, 2), (1, 3): Fraction(-2, 3)}, g=Fraction(5, 4))
    sec = sector_from_occupations(model, (3, 4, 6, 2))
    hop_a, hop_b, hop_c = hop_coefficients(model, sec)
    op = expand_diffop(model, sec)
    for n in range(sec.n_top + 3):
        # apply sum_i P_i (d/dz)^i to z^n directly, no subspace guard
        zn = Polynomial([0] * n + [1])
        out = op.p[0] * zn
        for i in range(1, op.order + 1):
            out = out + op.p[i] * zn.derivative(i)
        want = Polynomial([0] * (n + 1) + [hop_a(n)])
        want = want + Polynomial([0] * n + [hop_b(n)])
        if n >= 1:
            want = want + Polynomial([0] * (n - 1) + [hop_c(n)])
        else:
            assert hop_c(0) == 0
        assert out == want


def test_subspace_invariance_exact():
    model = make_model(2, 1, (1, 1, 2), w=[1, Fraction(1, 2), Fraction(-1, 3)],
                       wq={(0, 2): Fraction(1, 5)}, g=Fraction(2, 3))
    sec = sector_from_occupations(model, (2, 1, 4))
    op = expand_diffop(model, sec)
    rng = np.random.default_rng(5)
    for _ in range(10):
        psi = Polynomial([Fraction(int(rng.integers(-4, 5))) for _ in range(sec.n_top)] + [1])
        out = apply_to_polynomial(op, psi)
        assert out.degree <= sec.n_top


def test_apply_micro_eigenfunctions():
    op = expand_diffop(MODEL_A, SEC_A)
    plus = Polynomial((1, 1))
    minus = Polynomial((1, -1))
    assert apply_to_polynomial(op, plus) == plus
    assert apply_to_polynomial(op, minus) == -1 * minus
    top = Polynomial((0, 1))   # z^N with N=1
    assert apply_to_polynomial(op, top).degree <= 1


def test_apply_rejects_overlarge_degree():
    op = expand_diffop(MODEL_A, SEC_A)
    with pytest.raises(ValueError):
        apply_to_polynomial(op, Polynomial((0, 0, 1)))


def test_order_floor_is_two():
    model = make_model(1, 1, (1, 1), g=1)
    sec = sector_from_occupations(model, (0, 3))
    op = expand_diffop(model, sec)
    assert op.order == 2
    assert not op.p[2]   # no quadratic diagonal, so P_2 is the zero polynomial


def test_monomial_matrix_consistency():
    from multiboson import build_monomial_matrix

    model = make_model(2, 1, (1, 1, 2), w=[Fraction(1, 2), 1, -1],
                       wq={(1, 2): Fraction(3, 4)}, g=2)
    sec = sector_from_occupations(model, (2, 1, 4))
    hop_a, hop_b, hop_c = hop_coefficients(model, sec)
    block = build_monomial_matrix(model, sec)
    for n in range(sec.dim):
        assert block.diag[n] == float(hop_b(n))
    for n in range(sec.dim - 1):
        assert block.upper[n] == float(hop_a(n))
        assert block.lower[n] == float(hop_c(n + 1))


def test_inconsistent_sector_rejected():
    good = SEC_A
    doctored = Sector(q1=good.q1, q2=good.q2, l1=good.l1, l2=good.l2,
                      kappa=good.kappa, t=good.t, dim=good.dim,
                      base_occupations=(1, 1, 1))  # lowering no longer blocked
    with pytest.raises(ValueError):
        expand_diffop(MODEL_A, doctored)


def test_hop_degree_bounds_and_order():
    model = make_model(2, 2, (2, 1, 1, 3), w=[1, 1, 1, 1],
                       wq={(0, 3): Fraction(1, 2)}, g=1)
    sec = sector_from_occupations(model, (4, 2, 3, 6))
    hop_a, hop_b, hop_c = hop_coefficients(model, sec)
    assert hop_c.degree == 2 + 1          # sum of creation-group powers
    assert hop_a.degree == 1 + 3          # sum of annihilation-group powers
    assert hop_b.degree <= 2
    op = expand_diffop(model, sec)
    assert op.order == max(3, 4, 2)
    assert len(op.p) == op.order + 1
    for i in range(1, op.order + 1):
        assert op.p[i].degree <= i + 1
