import itertools
import json
from fractions import Fraction

import pytest

from rnforms.catalog import extend_bundle_map, extend_kform, l2_form, lk_form, wedge_form
from rnforms.dualforms import DualForm
from rnforms.elements import Element
from rnforms.forms import (PolyForm, as_polyform, element_form,
                           element_from_data, element_to_data, evaluation_table,
                           insert, is_zero, iterated_eval_identity, rn_bracket,
                           table_verdict)
from rnforms.graded import GradingConvention, koszul_sign
from rnforms.rings import InputError

SH2 = GradingConvention.SHIFTED2


def test_eval_examples(aff):
    e1, e2 = aff.generator(0), aff.generator(1)
    assert wedge_form(aff, 2).evaluate((e1, e2)) == e1.wedge(e2)
    assert l2_form(aff).evaluate((e1, e2)) == e2.scale(-1)
    assert wedge_form(aff, 2).evaluate((Element.zero(), e2)).is_zero()


def test_eval_errors(aff):
    with pytest.raises(InputError):
        wedge_form(aff, 2).evaluate((aff.generator(0),))
    mixed = aff.generator(0) + aff.unit()
    with pytest.raises(InputError):
        wedge_form(aff, 2).evaluate((mixed, aff.generator(1)))


def test_insert_examples(aff):
    e1, e2 = aff.generator(0), aff.generator(1)
    doubled = insert(wedge_form(aff, 1), wedge_form(aff, 2))
    assert doubled.evaluate((e1, e2)) == e1.wedge(e2).scale(2)
    l2 = l2_form(aff)
    assert insert(l2, wedge_form(aff, 1)).evaluate((e1, e2)) == l2.evaluate((e1, e2))
    X = element_form(aff, e1)
    partial = insert(X, wedge_form(aff, 2))
    assert partial.arity == 1
    assert partial.evaluate((e2,)) == e1.wedge(e2)
    into_zero_form = insert(wedge_form(aff, 2), element_form(aff, e1))
    assert into_zero_form.arity == 1
    assert into_zero_form.evaluate((e2,)).is_zero()


def test_insert_bookkeeping(h3):
    l2 = l2_form(h3)
    for k in (1, 2, 3):
        nk = wedge_form(h3, k)
        composed = insert(l2, nk)
        assert composed.arity == 2 + k - 1
        assert composed.shift == l2.shift + nk.shift
        assert composed.degree == l2.degree + nk.degree


def test_rn_bracket_zero_form_partial_application(aff):
    e1, e2 = aff.generator(0), aff.generator(1)
    K = wedge_form(aff, 2)
    bracket = rn_bracket(element_form(aff, e1), K)
    comp = bracket.component(1)
    assert comp is not None
    assert comp.evaluate((e2,)) == K.evaluate((e1, e2))


def test_iterated_eval_identity(aff, h3):
    for inst in (aff, h3):
        N2 = wedge_form(inst, 2)
        combos = list(itertools.combinations_with_replacement(inst.all_basis(), 2))
        assert all(iterated_eval_identity(N2, c) for c in combos)
    l3 = lk_form(h3, 3)
    for combo in itertools.combinations_with_replacement(h3.all_basis(), 3):
        assert iterated_eval_identity(l3, combo)
    X = element_form(aff, aff.generator(0))
    assert iterated_eval_identity(X, ())


def test_graded_symmetry_raw(h3):
    forms = [wedge_form(h3, 2), wedge_form(h3, 3), l2_form(h3), lk_form(h3, 3)]
    basis = h3.all_basis()
    for form in forms:
        for combo in itertools.combinations_with_replacement(basis, form.arity):
            base = form.raw_evaluate(combo)
            parities = [el.wedge_degree() for el in combo]
            for perm in itertools.permutations(range(form.arity)):
                sign = koszul_sign(perm, parities)
                permuted = tuple(combo[i] for i in perm)
                assert (form.raw_evaluate(permuted) - base.scale(sign)).is_zero()


def test_rn_graded_antisymmetry(h3):
    # [K,L] = -(-1)^{deg K deg L} [L,K]
    cases = [(wedge_form(h3, 2), l2_form(h3)),
             (wedge_form(h3, 2), wedge_form(h3, 3)),
             (l2_form(h3), lk_form(h3, 3))]
    for K, L in cases:
        sign = -1 if (K.shift * L.shift) % 2 == 0 else 1
        diff = rn_bracket(K, L) + rn_bracket(L, K).scale(-sign)
        assert is_zero(diff, h3).is_zero


def test_rn_graded_jacobi(aff_sh2):
    # [[K,L],M] = [K,[L,M]] - (-1)^{KL} [L,[K,M]] on triples drawn from the
    # wedge family, the bracket form, a bundle-map extension and a 2-form
    # extension
    aff = aff_sh2
    un = extend_bundle_map(aff, [[Fraction(1), Fraction(2)],
                                 [Fraction(0), Fraction(3)]], SH2)
    uomega = extend_kform(DualForm(aff, 2, {(0, 1): Fraction(1)}), SH2)
    n2 = wedge_form(aff, 2, SH2)
    l2 = l2_form(aff, SH2)
    triples = [
        (n2, l2, wedge_form(aff, 1, SH2)),
        (n2, l2, un),
        (l2, l2, n2),
        (un, uomega, l2),
        (uomega, l2, un),
        (uomega, uomega, l2),
    ]
    for K, L, M in triples:
        kl = (K.shift % 2) * (L.shift % 2)
        lhs = rn_bracket(rn_bracket(K, L), M)
        rhs = rn_bracket(K, rn_bracket(L, M)) - rn_bracket(
            L, rn_bracket(K, M)).scale(-1 if kl else 1)
        assert is_zero(lhs - rhs, aff).is_zero


def test_multilinearity_over_scalars(aff):
    l2 = l2_form(aff)
    e1, e2 = aff.generator(0), aff.generator(1)
    a, b = Fraction(3, 2), Fraction(-5, 7)
    combined = e1.scale(a) + e2.scale(b)
    lhs = l2.evaluate((combined, e1.wedge(e2)))
    rhs = l2.evaluate((e1, e1.wedge(e2))).scale(a) + \
        l2.evaluate((e2, e1.wedge(e2))).scale(b)
    assert (lhs - rhs).is_zero()


def test_kform_identity_for_extensions(h3_sh2):
    # the iterated-bracket identity holds for the derivation extensions too
    inst = h3_sh2
    uomega = extend_kform(DualForm(inst, 2, {(0, 1): Fraction(1)}), SH2)
    uH = extend_kform(DualForm(inst, 3, {(0, 1, 2): Fraction(1)}), SH2)
    un = extend_bundle_map(inst, [[Fraction(2), Fraction(1), 0],
                                  [0, Fraction(2), 0],
                                  [0, 0, Fraction(1)]], SH2)
    basis = inst.all_basis()
    for combo in itertools.combinations_with_replacement(basis, 2):
        assert iterated_eval_identity(uomega, combo)
    for combo in itertools.islice(
            itertools.combinations_with_replacement(basis, 3), 40):
        assert iterated_eval_identity(uH, combo)
    for el in basis:
        assert iterated_eval_identity(un, (el,))


def test_is_zero_examples(aff, broken):
    cert = is_zero(rn_bracket(l2_form(aff), l2_form(aff)), aff)
    assert cert.is_zero and cert.complete
    bad = is_zero(rn_bracket(l2_form(broken), l2_form(broken)), broken)
    assert not bad.is_zero
    assert bad.counterexample is not None
    assert "e1" in bad.counterexample[0]
    trivial = is_zero(PolyForm(aff, [], convention=aff.convention), aff)
    assert trivial.is_zero and trivial.complete


def test_is_zero_empty_family_rejected(poly):
    form = as_polyform(wedge_form(poly, 2, SH2))
    with pytest.raises(InputError):
        is_zero(form, poly, [])


def test_threads_do_not_change_verdict(aff, broken, monkeypatch):
    form = rn_bracket(l2_form(broken), l2_form(broken))
    sequential = is_zero(form, broken)
    monkeypatch.setenv("RNFORMS_THREADS", "4")
    threaded = is_zero(form, broken)
    assert threaded.counterexample == sequential.counterexample
    assert threaded.checked == sequential.checked
    monkeypatch.setenv("RNFORMS_THREADS", "zero")
    with pytest.raises(InputError):
        is_zero(form, broken)


def test_polyform_convention_mixing_rejected(h3):
    neg = wedge_form(h3, 2, GradingConvention.NEGATED)
    sh2 = extend_bundle_map(h3, [[Fraction(1), 0, 0], [0, Fraction(1), 0],
                                 [0, 0, Fraction(1)]], SH2)
    with pytest.raises(InputError):
        PolyForm(h3, [neg, sh2])


def test_polyform_degree_mixing_rejected(h3):
    with pytest.raises(InputError):
        PolyForm(h3, [wedge_form(h3, 2), l2_form(h3)])


def test_degree_reporting(h3, h3_sh2):
    assert wedge_form(h3, 2).degree == 0
    assert lk_form(h3, 3).degree == 1
    assert l2_form(h3_sh2, SH2).degree == 1
    omega = DualForm(h3_sh2, 2, {(0, 1): Fraction(1)})
    assert extend_kform(omega, SH2).degree == 0
    H = DualForm(h3_sh2, 3, {(0, 1, 2): Fraction(1)})
    assert extend_kform(H, SH2).degree == 1
    pi_form = element_form(h3_sh2, h3_sh2.monomial((0, 1)), SH2)
    assert pi_form.degree == 0


def test_evaluation_table_round_trip(aff, broken):
    zero_form = rn_bracket(wedge_form(aff, 2), l2_form(aff)) - as_polyform(lk_form(aff, 3))
    table = evaluation_table(zero_form, aff)
    recovered = json.loads(json.dumps(table, sort_keys=True))
    verdict = table_verdict(aff, recovered)
    assert verdict == (True, None)
    assert verdict == (is_zero(zero_form, aff).is_zero, None)

    bad = rn_bracket(l2_form(broken), l2_form(broken))
    table2 = json.loads(json.dumps(evaluation_table(bad, broken), sort_keys=True))
    ok, witness = table_verdict(broken, table2)
    cert = is_zero(bad, broken)
    assert ok == cert.is_zero == False
    assert witness is not None


def test_element_serialization_round_trip(poly):
    x1 = poly.ring.var(0)
    el = poly.generator(0).scale(x1) + poly.monomial((0, 1)).scale(Fraction(-2, 3))
    data = element_to_data(poly, el)
    assert element_from_data(poly, data) == el
