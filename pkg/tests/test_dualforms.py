import itertools
from fractions import Fraction

import pytest

from rnforms.dualforms import (DualForm, apply_matrix, background_script,
                               compat_n_pi, d_function, differential,
                               element_on_duals, iota_n, lie_derivative, n_star,
                               omega_flat, omega_n, pairing, pi_sharp)
from rnforms.rings import InputError


def dual(inst, i):
    return DualForm(inst, 1, {(i,): inst.ring.one()})


def test_differential_heisenberg(h3):
    d3 = differential(dual(h3, 2))
    assert d3.table == {(0, 1): Fraction(-1)}
    assert differential(dual(h3, 0)).is_zero()
    assert differential(DualForm(h3, 0, {(): Fraction(5)})).is_zero()


def test_d_squared_zero_everywhere(aff, h3, so3_inst, poly):
    for inst in (aff, h3, so3_inst, poly):
        for i in range(inst.rank):
            assert differential(differential(dual(inst, i))).is_zero()
        if inst.ring.kind == "poly":
            f = inst.ring.var(0) * inst.ring.var(1)
            assert differential(d_function(inst, f)).is_zero()


def test_lie_derivative_aff1(aff):
    e1 = aff.generator(0)
    result = lie_derivative(e1, dual(aff, 1))
    assert result.table == {(1,): Fraction(-1)}


def test_lie_derivative_on_functions(poly):
    x1 = poly.ring.var(0)
    f = DualForm(poly, 0, {(): x1 * x1})
    out = lie_derivative(poly.generator(0), f)
    assert out.table[()] == 2 * x1


def test_lie_derivative_central_invariant(ab2):
    # abelian algebra over a point: every derivative vanishes
    kappa = DualForm(ab2, 2, {(0, 1): Fraction(3)})
    assert lie_derivative(ab2.generator(0), kappa).is_zero()


def test_pi_sharp_conventions(aff):
    pi = aff.monomial((0, 1))
    assert pi_sharp(pi, dual(aff, 0)) == aff.generator(1)
    assert pi_sharp(pi, dual(aff, 1)) == aff.generator(0).scale(-1)
    from rnforms.elements import Element
    assert pi_sharp(Element.zero(), dual(aff, 0)).is_zero()


def test_pairing_determinant_convention(aff):
    pi = aff.monomial((0, 1))
    assert element_on_duals(pi, (dual(aff, 0), dual(aff, 1))) == 1
    assert element_on_duals(pi, (dual(aff, 1), dual(aff, 0))) == -1
    # <beta, pi# alpha> = pi(alpha, beta)
    for i, j in itertools.product(range(2), repeat=2):
        a, b = dual(aff, i), dual(aff, j)
        assert pairing(b, pi_sharp(pi, a)) == element_on_duals(pi, (a, b))


def test_n_star_transpose(aff):
    N = [[Fraction(2), Fraction(0)], [Fraction(0), Fraction(5)]]
    assert n_star(aff, N, dual(aff, 0)).table == {(0,): Fraction(2)}
    identity = [[Fraction(1), 0], [0, Fraction(1)]]
    assert n_star(aff, identity, dual(aff, 1)) == dual(aff, 1)
    # <N* a, X> = <a, N X> for an off-diagonal N
    N2 = [[Fraction(0), Fraction(1)], [Fraction(3), Fraction(0)]]
    for i in range(2):
        for j in range(2):
            a, X = dual(aff, i), aff.generator(j)
            assert pairing(n_star(aff, N2, a), X) == pairing(a, apply_matrix(aff, N2, X))


def test_omega_flat(aff):
    omega = DualForm(aff, 2, {(0, 1): Fraction(1)})
    assert omega_flat(omega, aff.generator(0)).table == {(1,): Fraction(1)}
    assert omega_flat(omega, aff.generator(1)).table == {(0,): Fraction(-1)}


def test_omega_n_scalar(h3):
    omega = DualForm(h3, 2, {(0, 1): Fraction(1), (1, 2): Fraction(2)})
    N = [[Fraction(3) if i == j else Fraction(0) for j in range(3)] for i in range(3)]
    assert omega_n(omega, N) == omega.scale(3)
    bad = [[Fraction(1), 0, 0], [0, Fraction(2), 0], [0, 0, Fraction(2)]]
    with pytest.raises(InputError):
        omega_n(omega, bad)


def test_iota_n_identity(h3):
    theta = DualForm(h3, 3, {(0, 1, 2): Fraction(1)})
    identity = [[Fraction(1) if i == j else Fraction(0) for j in range(3)]
                for i in range(3)]
    assert iota_n(theta, identity) == theta.scale(3)
    assert background_script(theta, identity) == theta.scale(3)


def test_compat_checks(aff):
    pi = aff.monomial((0, 1))
    scalar = [[Fraction(4), 0], [0, Fraction(4)]]
    assert compat_n_pi(aff, scalar, pi)
    assert not compat_n_pi(aff, [[Fraction(1), 0], [0, Fraction(2)]], pi)


def test_dualform_entry_antisymmetry(h3):
    H = DualForm(h3, 3, {(0, 1, 2): Fraction(1)})
    assert H.entry((1, 0, 2)) == -1
    assert H.entry((2, 0, 1)) == 1
    assert H.entry((0, 0, 1)) == 0


def test_top_degree_zero_forms(aff):
    top = differential(DualForm(aff, 2, {(0, 1): Fraction(1)}))
    assert top.k == 3 and top.is_zero()
    with pytest.raises(InputError):
        DualForm(aff, 3, {(0, 1, 2): Fraction(1)})
