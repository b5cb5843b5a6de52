"""Antisymmetric k-forms on the dual, and the Cartan calculus on them.

A DualForm stores its values on strictly increasing generator tuples; all
other values follow by antisymmetry and multilinearity over the coefficient
ring.  The evaluation pairing is the determinant convention

    (P_1 ^ ... ^ P_p)(a_1, ..., a_p) = det <a_i, P_j>,

which fixes every contraction sign in the kernel.  The differential is the
Cartan formula (anchor terms plus bracket terms); over a point it reduces to
d k(X, Y) = -k([X, Y]).
"""

from __future__ import annotations

import itertools

from .elements import Element
from .instances import GradedInstance
from .rings import InputError


class DualForm:
    """k-form with entries in the instance's coefficient ring."""

    def __init__(self, instance: GradedInstance, k: int, table=None):
        if k < 0:
            raise InputError("form degree must be nonnegative")
        if k > instance.rank and table:
            raise InputError(f"a nonzero {k}-form cannot exist on rank {instance.rank}")
        self.instance = instance
        self.k = k
        ring = instance.ring
        clean = {}
        for mon, coeff in (table or {}).items():
            mon = tuple(mon)
            if len(mon) != k:
                raise InputError(f"table key {mon} does not have length {k}")
            if any(not 0 <= i < instance.rank for i in mon):
                raise InputError(f"table key {mon} indexes an unknown generator")
            if list(mon) != sorted(set(mon)):
                raise InputError(f"table key {mon} must be strictly increasing")
            coeff = ring.coerce(coeff)
            if coeff:
                clean[mon] = coeff
        self.table = clean

    @classmethod
    def zero(cls, instance, k) -> "DualForm":
        return cls(instance, k, {})

    def is_zero(self) -> bool:
        return not self.table

    def __add__(self, other: "DualForm") -> "DualForm":
        self._check(other)
        table = dict(self.table)
        for mon, coeff in other.table.items():
            acc = table.get(mon, self.instance.ring.zero()) + coeff
            if acc:
                table[mon] = acc
            else:
                table.pop(mon, None)
        return DualForm(self.instance, self.k, table)

    def __sub__(self, other: "DualForm") -> "DualForm":
        return self + other.scale(-1)

    def scale(self, factor) -> "DualForm":
        return DualForm(self.instance, self.k,
                        {mon: factor * c for mon, c in self.table.items()})

    def __eq__(self, other):
        if not isinstance(other, DualForm):
            return NotImplemented
        return self.instance is other.instance and self.k == other.k and self.table == other.table

    def __hash__(self):
        return hash((self.k, tuple(sorted(self.table))))

    def _check(self, other: "DualForm"):
        if self.instance is not other.instance or self.k != other.k:
            raise InputError("dual forms of different instances or degrees")

    def entry(self, indices) -> object:
        """Value on a generator tuple in any order (sign by antisymmetry)."""
        indices = tuple(indices)
        if len(set(indices)) != len(indices):
            return self.instance.ring.zero()
        order = tuple(sorted(indices))
        perm = [order.index(i) for i in indices]
        inversions = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm))
                         if perm[a] > perm[b])
        value = self.table.get(order, self.instance.ring.zero())
        return -value if inversions % 2 else value

    def apply(self, sections) -> object:
        """Multilinear evaluation on wedge-degree-1 elements."""
        sections = tuple(sections)
        if len(sections) != self.k:
            raise InputError(f"a {self.k}-form takes {self.k} sections")
        total = self.instance.ring.zero()
        for picks in itertools.product(*(s.terms.items() for s in sections)):
            coeff = self.instance.ring.one()
            indices = []
            for mon, c in picks:
                if len(mon) != 1:
                    raise InputError("dual form applied to a non-section")
                coeff = coeff * c
                indices.append(mon[0])
            total = total + coeff * self.entry(indices)
        return total

    def label(self) -> str:
        inst = self.instance
        bits = []
        for mon, coeff in sorted(self.table.items()):
            name = "^".join(f"{inst.generator_names[i]}*" for i in mon) if mon else "1"
            c = inst.ring.format(coeff)
            bits.append(f"({c})*{name}" if c != "1" else name)
        return " + ".join(bits) if bits else "0"


def differential(kappa: DualForm) -> DualForm:
    """Cartan differential: (d k)(X_0..X_k) = sum_i (-1)^i rho(X_i) k(..^i..)
    + sum_{i<j} (-1)^{i+j} k([X_i, X_j], ..^i..^j..)."""
    inst = kappa.instance
    k = kappa.k
    table = {}
    for mon in itertools.combinations(range(inst.rank), k + 1):
        value = inst.ring.zero()
        for i, gi in enumerate(mon):
            rest = mon[:i] + mon[i + 1:]
            inner = kappa.table.get(rest)
            if inner:
                term = inst.anchor_apply(gi, inner)
                value = value + (term if i % 2 == 0 else -term)
        for (i, gi), (j, gj) in itertools.combinations(enumerate(mon), 2):
            bracket = inst.data.bracket_terms(gi, gj)
            if not bracket:
                continue
            rest = tuple(g for g in mon if g not in (gi, gj))
            acc = inst.ring.zero()
            for target, coeff in bracket.items():
                acc = acc + coeff * kappa.entry((target,) + rest)
            value = value + (-acc if (i + j) % 2 else acc)
        if value:
            table[mon] = value
    return DualForm(inst, k + 1, table)


def iota_element(X: Element, kappa: DualForm) -> DualForm:
    """Contraction with a wedge-degree-1 element in the first slot."""
    inst = kappa.instance
    if kappa.k == 0:
        raise InputError("cannot contract a 0-form")
    table: dict = {}
    for mon in itertools.combinations(range(inst.rank), kappa.k - 1):
        value = inst.ring.zero()
        for gmon, coeff in X.terms.items():
            if len(gmon) != 1:
                raise InputError("contraction needs a wedge-degree-1 element")
            value = value + coeff * kappa.entry((gmon[0],) + mon)
        if value:
            table[mon] = value
    return DualForm(inst, kappa.k - 1, table)


def lie_derivative(X: Element, kappa: DualForm) -> DualForm:
    """Cartan formula L_X = i_X d + d i_X; on 0-forms, rho(X) f."""
    inst = kappa.instance
    if kappa.k == 0:
        f = kappa.table.get((), inst.ring.zero())
        return DualForm(inst, 0, {(): inst.anchor_on_function(X, f)})
    first = iota_element(X, differential(kappa))
    second = differential(iota_element(X, kappa))
    return first + second


def d_function(inst: GradedInstance, f) -> DualForm:
    return differential(DualForm(inst, 0, {(): f}))


def pairing(alpha: DualForm, X: Element):
    """<alpha, X> for a 1-form and a section."""
    if alpha.k != 1:
        raise InputError("pairing needs a 1-form")
    return alpha.apply((X,))


def element_on_duals(P: Element, alphas) -> object:
    """Determinant-convention evaluation of a wedge-degree-p element on p
    1-forms: (P_1^...^P_p)(a_1..a_p) = det <a_i, P_j>."""
    alphas = tuple(alphas)
    inst = alphas[0].instance if alphas else None
    if inst is None:
        raise InputError("need at least one 1-form")
    ring = inst.ring
    p = len(alphas)
    total = ring.zero()
    for mon, coeff in P.terms.items():
        if len(mon) != p:
            raise InputError("element degree does not match the number of 1-forms")
        det = ring.zero()
        for perm in itertools.permutations(range(p)):
            inv = sum(1 for a in range(p) for b in range(a + 1, p) if perm[a] > perm[b])
            prod = ring.one()
            for row, col in enumerate(perm):
                prod = prod * alphas[row].entry((mon[col],))
            det = det + (prod if inv % 2 == 0 else -prod)
        total = total + coeff * det
    return total


def pi_sharp(pi: Element, alpha: DualForm) -> Element:
    """<beta, pi#(alpha)> = pi(alpha, beta) under the determinant pairing."""
    inst = alpha.instance
    if alpha.k != 1:
        raise InputError("pi# needs a 1-form")
    if not pi.is_zero() and pi.require_homogeneous() != 2:
        raise InputError("pi must have wedge degree 2")
    terms: dict = {}
    for (i, j), coeff in pi.terms.items():
        ai = alpha.entry((i,))
        aj = alpha.entry((j,))
        # (e_i ^ e_j)# alpha = <alpha, e_i> e_j - <alpha, e_j> e_i
        if ai:
            terms[(j,)] = terms.get((j,), inst.ring.zero()) + coeff * ai
        if aj:
            terms[(i,)] = terms.get((i,), inst.ring.zero()) - coeff * aj
    return Element({mon: c for mon, c in terms.items() if c})


def pi_sharp_matrix(inst: GradedInstance, pi: Element):
    """Matrix of pi# (columns are pi# of the dual generators)."""
    cols = []
    for i in range(inst.rank):
        alpha = DualForm(inst, 1, {(i,): inst.ring.one()})
        image = pi_sharp(pi, alpha)
        cols.append([image.terms.get((j,), inst.ring.zero()) for j in range(inst.rank)])
    return [[cols[j][i] for j in range(inst.rank)] for i in range(inst.rank)]


def n_star(inst: GradedInstance, N, alpha: DualForm) -> DualForm:
    """Transpose action: <N* alpha, X> = <alpha, N X>."""
    if alpha.k != 1:
        raise InputError("N* acts on 1-forms")
    _check_matrix(inst, N)
    table = {}
    for i in range(inst.rank):
        value = inst.ring.zero()
        for j in range(inst.rank):
            value = value + N[j][i] * alpha.entry((j,))
        if value:
            table[(i,)] = value
    return DualForm(inst, 1, table)


def apply_matrix(inst: GradedInstance, N, X: Element) -> Element:
    """N X for a wedge-degree-1 element."""
    _check_matrix(inst, N)
    terms: dict = {}
    for mon, coeff in X.terms.items():
        if len(mon) != 1:
            raise InputError("bundle map applied to a non-section")
        for j in range(inst.rank):
            entry = N[j][mon[0]]
            if entry:
                acc = terms.get((j,), inst.ring.zero()) + coeff * entry
                terms[(j,)] = acc
    return Element({mon: c for mon, c in terms.items() if c})


def omega_flat(omega: DualForm, X: Element) -> DualForm:
    """omega_flat(X) = omega(X, .)."""
    if omega.k != 2:
        raise InputError("flat map needs a 2-form")
    return iota_element(X, omega)


def matrix_mul(inst: GradedInstance, A, B):
    n = inst.rank
    return [[sum((A[i][k] * B[k][j] for k in range(n)), inst.ring.zero())
             for j in range(n)] for i in range(n)]


def matrix_equal(inst: GradedInstance, A, B) -> bool:
    n = inst.rank
    return all(inst.ring.coerce(A[i][j]) == inst.ring.coerce(B[i][j])
               for i in range(n) for j in range(n))


def _check_matrix(inst: GradedInstance, N) -> None:
    n = inst.rank
    if len(N) != n or any(len(row) != n for row in N):
        raise InputError(f"bundle map must be a {n}x{n} matrix")


def compat_n_pi(inst: GradedInstance, N, pi: Element) -> bool:
    """N o pi# = pi# o N* as matrices."""
    _check_matrix(inst, N)
    sharp = pi_sharp_matrix(inst, pi)
    n_sharp = matrix_mul(inst, N, sharp)
    nstar = [[N[j][i] for j in range(inst.rank)] for i in range(inst.rank)]
    sharp_nstar = matrix_mul(inst, sharp, nstar)
    return matrix_equal(inst, n_sharp, sharp_nstar)


def compat_omega_n(inst: GradedInstance, omega: DualForm, N) -> bool:
    """omega_flat o N = N* o omega_flat, i.e. omega(N X, Y) = omega(X, N Y)."""
    _check_matrix(inst, N)
    for i in range(inst.rank):
        for j in range(inst.rank):
            lhs = omega.apply((apply_matrix(inst, N, inst.generator(i)), inst.generator(j)))
            rhs = omega.apply((inst.generator(i), apply_matrix(inst, N, inst.generator(j))))
            if lhs != rhs:
                return False
    return True


def omega_n(omega: DualForm, N) -> DualForm:
    """omega_N(X, Y) = omega(N X, Y) = omega(X, N Y); requires compatibility."""
    inst = omega.instance
    if not compat_omega_n(inst, omega, N):
        raise InputError("omega_flat o N != N* o omega_flat; omega_N is not defined")
    table = {}
    for mon in itertools.combinations(range(inst.rank), 2):
        value = omega.apply((apply_matrix(inst, N, inst.generator(mon[0])),
                             inst.generator(mon[1])))
        if value:
            table[mon] = value
    return DualForm(inst, 2, table)


def iota_n(theta: DualForm, N) -> DualForm:
    """(i_N theta)(X,Y,Z) = theta(NX,Y,Z) + theta(X,NY,Z) + theta(X,Y,NZ)."""
    inst = theta.instance
    if theta.k != 3:
        raise InputError("i_N here acts on 3-forms")
    table = {}
    for mon in itertools.combinations(range(inst.rank), 3):
        gens = [inst.generator(i) for i in mon]
        value = inst.ring.zero()
        for slot in range(3):
            args = list(gens)
            args[slot] = apply_matrix(inst, N, args[slot])
            value = value + theta.apply(args)
        if value:
            table[mon] = value
    return DualForm(inst, 3, table)


def background_script(H: DualForm, N) -> DualForm:
    """Cyclic background combination: (X,Y,Z) -> H(NX,NY,Z) + cycl."""
    inst = H.instance
    if H.k != 3:
        raise InputError("the background combination needs a 3-form")
    table = {}
    for mon in itertools.combinations(range(inst.rank), 3):
        gens = [inst.generator(i) for i in mon]
        value = inst.ring.zero()
        for shift in range(3):
            X, Y, Z = (gens[(0 + shift) % 3], gens[(1 + shift) % 3], gens[(2 + shift) % 3])
            value = value + H.apply((apply_matrix(inst, N, X), apply_matrix(inst, N, Y), Z))
        if value:
            table[mon] = value
    return DualForm(inst, 3, table)
