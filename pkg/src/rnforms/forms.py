"""Graded-symmetric vector-valued forms as evaluable objects.

A VForm of arity k maps k-tuples of homogeneous elements to elements,
multilinearly and graded-symmetrically.  Forms are combinator trees
(primitive rules, sums, scalar multiples, insertions, brackets); dense
tables are only materialized by :func:`is_zero`.

Degree bookkeeping is carried by the wedge shift c (output wedge degree
minus the sum of the input wedge degrees).  The convention degree is
-c under the negated convention and c + 2(k-1) under the shifted-by-2
convention; both have the parity of c, so every sign in the bracket
calculus is convention independent.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .elements import Element
from .graded import GradingConvention, koszul_sign, sign_pow, unshuffles
from .instances import GradedInstance
from .rings import InputError, PolyRing


class VForm:
    """A single graded-symmetric vector-valued form of one arity."""

    def __init__(self, instance: GradedInstance, arity: int, shift: int, fn,
                 convention=None, label: str = "K"):
        if arity < 0:
            raise InputError("form arity must be nonnegative")
        self.instance = instance
        self.arity = arity
        self.shift = shift
        self.fn = fn
        self.convention = convention or instance.convention
        self.label = label
        self._memo: dict = {}

    # -- degree ---------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Convention degree of the form as a graded map."""
        if self.convention is GradingConvention.NEGATED:
            return -self.shift
        return self.shift + 2 * (self.arity - 1)

    # -- evaluation -----------------------------------------------------------

    def raw_evaluate(self, args) -> Element:
        """Evaluate without argument canonicalization (no memo); used by the
        graded-symmetry tests, which must see the uncanonicalized rule."""
        return self.fn(tuple(args))

    def evaluate(self, args) -> Element:
        args = tuple(args)
        if len(args) != self.arity:
            raise InputError(f"{self.label}: expected {self.arity} arguments, got {len(args)}")
        for arg in args:
            if arg.is_zero():
                return Element.zero()
            if not arg.is_homogeneous():
                raise InputError(f"{self.label}: argument {arg!r} is not homogeneous")
        canonical, sign = self._canonical(args)
        if sign == 0:
            return Element.zero()
        cached = self._memo.get(canonical)
        if cached is None:
            cached = self.fn(canonical)
            self._memo[canonical] = cached
        return cached if sign > 0 else -cached

    __call__ = evaluate

    def _canonical(self, args):
        ring = self.instance.ring
        keys = [(arg.wedge_degree(), arg.key(ring)) for arg in args]
        order = sorted(range(len(args)), key=keys.__getitem__)
        parities = [k[0] for k in keys]
        for a, b in zip(order, order[1:]):
            if keys[a] == keys[b] and parities[a] % 2:
                return (), 0
        sign = koszul_sign(order, parities)
        return tuple(args[i] for i in order), int(sign)

    # -- linear structure -------------------------------------------------------

    def _compatible(self, other: "VForm") -> None:
        if self.instance is not other.instance:
            raise InputError("forms live on different instances")
        if self.convention is not other.convention:
            raise InputError(
                f"mixing grading conventions ({self.convention.value} vs {other.convention.value})")
        if self.arity != other.arity or self.shift != other.shift:
            raise InputError(
                f"cannot add forms of arity/shift ({self.arity},{self.shift}) and"
                f" ({other.arity},{other.shift})")

    def __add__(self, other: "VForm") -> "VForm":
        self._compatible(other)
        return VForm(self.instance, self.arity, self.shift,
                     lambda args: self.evaluate(args) + other.evaluate(args),
                     self.convention, label=f"({self.label} + {other.label})")

    def __sub__(self, other: "VForm") -> "VForm":
        self._compatible(other)
        return VForm(self.instance, self.arity, self.shift,
                     lambda args: self.evaluate(args) - other.evaluate(args),
                     self.convention, label=f"({self.label} - {other.label})")

    def scale(self, factor) -> "VForm":
        factor = Fraction(factor)
        return VForm(self.instance, self.arity, self.shift,
                     lambda args: self.evaluate(args).scale(factor),
                     self.convention, label=f"{factor}*{self.label}")

    def __neg__(self) -> "VForm":
        return self.scale(-1)

    @classmethod
    def zero(cls, instance, arity, shift, convention=None, label="0") -> "VForm":
        return cls(instance, arity, shift, lambda args: Element.zero(), convention, label)


def element_form(instance: GradedInstance, element: Element, convention=None,
                 label=None, wedge_degree=None) -> VForm:
    """Wrap a homogeneous element as a vector-valued 0-form."""
    if element.is_zero():
        if wedge_degree is None:
            raise InputError("zero 0-form needs an explicit wedge degree")
        deg = wedge_degree
    else:
        deg = element.require_homogeneous()
    return VForm(instance, 0, deg, lambda args: element, convention,
                 label=label or instance.basis_label(element))


def insert(K: VForm, L: VForm) -> VForm:
    """Insertion of K into every argument slot of L over (k, l-1)-unshuffles
    with Koszul signs.  Inserting into a 0-form gives the zero form;
    inserting a 0-form X into L is the partial application L(X, ...)."""
    if K.instance is not L.instance:
        raise InputError("forms live on different instances")
    if K.convention is not L.convention:
        raise InputError("mixing grading conventions in an insertion")
    k, l = K.arity, L.arity
    arity = k + l - 1
    shift = K.shift + L.shift
    label = f"i_{{{K.label}}}{L.label}"
    if l == 0:
        if arity < 0:
            raise InputError("insertion of a 0-form into a 0-form is undefined")
        return VForm.zero(K.instance, arity, shift, K.convention, label=label)
    shuffles = unshuffles(k, l - 1)

    def fn(args):
        parities = [arg.wedge_degree() for arg in args]
        total = Element.zero()
        for perm in shuffles:
            sign = koszul_sign(perm, parities)
            inner = K.evaluate(tuple(args[i] for i in perm[:k]))
            if inner.is_zero():
                continue
            value = L.evaluate((inner,) + tuple(args[i] for i in perm[k:]))
            if sign < 0:
                value = -value
            total = total + value
        return total

    return VForm(K.instance, arity, shift, fn, K.convention, label=label)


def rn_vform(K: VForm, L: VForm) -> VForm:
    """Single-component bracket i_K L - (-1)^{deg K deg L} i_L K."""
    left = insert(K, L)
    right = insert(L, K)
    if sign_pow(K.shift * L.shift) > 0:
        return VForm(K.instance, left.arity, left.shift,
                     lambda args: left.evaluate(args) - right.evaluate(args),
                     K.convention, label=f"[{K.label},{L.label}]")
    return VForm(K.instance, left.arity, left.shift,
                 lambda args: left.evaluate(args) + right.evaluate(args),
                 K.convention, label=f"[{K.label},{L.label}]")


class PolyForm:
    """Finite sum of VForms of distinct arities sharing one convention degree."""

    def __init__(self, instance: GradedInstance, components, convention=None, label=None):
        self.instance = instance
        comps = {}
        for form in components:
            if form.instance is not instance:
                raise InputError("component lives on a different instance")
            if form.arity in comps:
                comps[form.arity] = comps[form.arity] + form
            else:
                comps[form.arity] = form
        self.components = dict(sorted(comps.items()))
        conventions = {f.convention for f in self.components.values()}
        if convention is None and not conventions:
            raise InputError("empty sum of forms needs an explicit convention")
        if len(conventions) > 1:
            raise InputError("mixing grading conventions in one form family")
        self.convention = convention or conventions.pop()
        degrees = {f.degree for f in self.components.values()}
        if len(degrees) > 1:
            raise InputError(
                f"components of distinct convention degrees {sorted(degrees)} in one form family")
        self.degree = degrees.pop() if degrees else None
        self.label = label or " + ".join(f.label for f in self.components.values()) or "0"

    def arities(self):
        return tuple(self.components)

    def component(self, arity: int) -> VForm | None:
        return self.components.get(arity)

    def is_trivial(self) -> bool:
        return not self.components

    def __add__(self, other: "PolyForm") -> "PolyForm":
        other = as_polyform(other, self.instance)
        return PolyForm(self.instance,
                        list(self.components.values()) + list(other.components.values()),
                        convention=self.convention,
                        label=f"({self.label} + {other.label})")

    def __sub__(self, other: "PolyForm") -> "PolyForm":
        other = as_polyform(other, self.instance)
        return self + other.scale(-1)

    def scale(self, factor) -> "PolyForm":
        return PolyForm(self.instance,
                        [f.scale(factor) for f in self.components.values()],
                        convention=self.convention,
                        label=f"{factor}*({self.label})")


def as_polyform(form, instance=None) -> PolyForm:
    if isinstance(form, PolyForm):
        return form
    if isinstance(form, VForm):
        return PolyForm(form.instance, [form], label=form.label)
    raise InputError(f"not a form: {form!r}")


def rn_bracket(K, L) -> PolyForm:
    """Richardson-Nijenhuis bracket, extended bilinearly over components."""
    K = as_polyform(K)
    L = as_polyform(L, K.instance)
    if K.instance is not L.instance:
        raise InputError("forms live on different instances")
    parts = []
    for k, Kk in K.components.items():
        for l, Ll in L.components.items():
            if k == 0 and l == 0:
                continue
            parts.append(rn_vform(Kk, Ll))
    return PolyForm(K.instance, parts, convention=K.convention,
                    label=f"[{K.label},{L.label}]")


def iterated_eval_identity(K: VForm, args) -> bool:
    """K(X1,...,Xk) equals the iterated bracket [Xk,...,[X2,[X1,K]]...]."""
    args = tuple(args)
    if len(args) != K.arity:
        raise InputError(f"expected {K.arity} arguments, got {len(args)}")
    current = as_polyform(K)
    for arg in args:
        x = element_form(K.instance, arg, K.convention)
        current = rn_bracket(x, current)
    final = current.component(0)
    direct = K.evaluate(args)
    iterated = final.evaluate(()) if final is not None else Element.zero()
    return (direct - iterated).is_zero()


# -- exhaustive zero checking ----------------------------------------------------


class ZeroCertificate:
    """Verdict of an exhaustive (or declared-family) vanishing check."""

    def __init__(self, instance, label, arities, checked, complete, counterexample,
                 family_note):
        self.instance = instance
        self.label = label
        self.arities = tuple(arities)
        self.checked = checked                  # list of tuple labels, in test order
        self.complete = complete
        self.counterexample = counterexample    # (tuple label, value label) or None
        self.family_note = family_note

    @property
    def is_zero(self) -> bool:
        return self.counterexample is None

    def summary(self) -> dict:
        return {
            "instance": self.instance,
            "form": self.label,
            "arities": list(self.arities),
            "tuples_checked": len(self.checked),
            "complete": self.complete,
            "zero": self.is_zero,
            "counterexample": (
                None if self.counterexample is None
                else {"tuple": self.counterexample[0], "value": self.counterexample[1]}),
            "family": self.family_note,
        }

    def __repr__(self):
        status = "zero" if self.is_zero else f"nonzero at {self.counterexample[0]}"
        return f"ZeroCertificate({self.label}: {status}, complete={self.complete})"


def thread_count() -> int:
    raw = os.environ.get("RNFORMS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise InputError(f"RNFORMS_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise InputError(f"RNFORMS_THREADS must be a positive integer, got {raw!r}")
    return n


def basis_tuples(instance: GradedInstance, arity: int, family=None):
    """Canonical symmetric tuples from the basis (or a declared family):
    non-decreasing in the total order, no repeated odd factor."""
    if family is None:
        family = instance.all_basis()
    if not family:
        raise InputError("empty test family")
    ring = instance.ring
    decorated = sorted(family, key=lambda el: (el.wedge_degree(), el.key(ring)))
    if arity == 0:
        yield ()
        return
    for combo in itertools.combinations_with_replacement(decorated, arity):
        skip = False
        for a, b in zip(combo, combo[1:]):
            if a is b or a == b:
                if a.wedge_degree() % 2:
                    skip = True
                    break
        if skip:
            continue
        yield combo


def is_zero(form, instance=None, test_family=None) -> ZeroCertificate:
    """Exhaustive vanishing verdict on all canonical basis tuples (finite
    instances: a complete proof by multilinearity and graded symmetry) or on
    a declared family (polynomial instances: a verification, flagged as
    incomplete)."""
    form = as_polyform(form, instance)
    instance = instance or form.instance
    polynomial = isinstance(instance.ring, PolyRing)
    if polynomial and test_family is None:
        test_family = default_poly_family(instance)
    complete = not polynomial
    if polynomial:
        note = f"declared family of {len(test_family)} elements"
    else:
        note = "all canonical basis tuples"
    checked: list[str] = []
    counterexample = None
    workers = thread_count()
    for arity in form.arities():
        comp = form.component(arity)
        tuples = list(basis_tuples(instance, arity, test_family))
        labels = ["(" + ", ".join(instance.basis_label(el) for el in combo) + ")"
                  for combo in tuples]
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                values = list(pool.map(comp.evaluate, tuples))
        else:
            values = [comp.evaluate(combo) for combo in tuples]
        for label, value in zip(labels, values):
            checked.append(f"arity {arity}: {label}")
            if counterexample is None and not value.is_zero():
                counterexample = (f"arity {arity}: {label}", instance.basis_label(value))
    return ZeroCertificate(instance.name, form.label, form.arities(), checked,
                           complete, counterexample, note)


def element_to_data(instance: GradedInstance, element: Element) -> dict:
    """JSON-ready map wedge-monomial-label -> serialized coefficient."""
    out = {}
    for mon, coeff in sorted(element.terms.items(), key=lambda t: (len(t[0]), t[0])):
        label = "^".join(instance.generator_names[i] for i in mon) if mon else "1"
        out[label] = instance.ring.format(coeff)
    return out


def element_from_data(instance: GradedInstance, data: dict) -> Element:
    index = {name: i for i, name in enumerate(instance.generator_names)}
    terms = {}
    for label, value in data.items():
        mon = () if label == "1" else tuple(index[p] for p in label.split("^"))
        terms[mon] = instance.ring.parse(value)
    return Element(terms)


def evaluation_table(form, instance=None, test_family=None) -> dict:
    """Dense evaluation table of a form family on the canonical tuples,
    serializable to JSON and re-readable with identical verdicts."""
    form = as_polyform(form, instance)
    instance = instance or form.instance
    if isinstance(instance.ring, PolyRing) and test_family is None:
        test_family = default_poly_family(instance)
    table: dict = {}
    for arity in form.arities():
        comp = form.component(arity)
        rows = {}
        for combo in basis_tuples(instance, arity, test_family):
            label = ", ".join(instance.basis_label(el) for el in combo)
            rows[label] = element_to_data(instance, comp.evaluate(combo))
        table[str(arity)] = rows
    return table


def table_verdict(instance: GradedInstance, table: dict):
    """(is_zero, first nonzero entry) for a serialized evaluation table,
    scanning arities and tuples in their serialized order."""
    for arity in sorted(table, key=int):
        for label, data in table[arity].items():
            element = element_from_data(instance, data)
            if not element.is_zero():
                return False, f"arity {arity}: ({label})"
    return True, None


def default_poly_family(instance: GradedInstance, coefficient_degree: int = 1):
    """Monomial multivectors scaled by coordinate monomials of bounded degree."""
    ring = instance.ring
    family = list(instance.all_basis())
    if coefficient_degree >= 1:
        monos = coordinate_monomials(ring, coefficient_degree)
        for poly in monos:
            family.extend(el.scale(poly) for el in instance.all_basis())
    return family


def coordinate_monomials(ring: PolyRing, max_degree: int):
    """Nonconstant coordinate monomials of total degree <= max_degree."""
    out = []
    for total in range(1, max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(ring.nvars), total):
            poly = ring.one()
            for idx in combo:
                poly = poly * ring.var(idx)
            out.append(poly)
    return out
