"""Scenario files: JSON descriptions of an instance plus the tensor data and
suite bounds the CLI commands operate on.

Schema (all coefficients are rational strings "p/q" or, on polynomial
instances, exponent-keyed maps {"x1^2 x2": "1/3", "1": "2"}):

{
  "name": "aff1",
  "instance": {
    "lie_algebra": {"dim": 2, "basis": ["e1","e2"],
                     "brackets": {"e1,e2": {"e2": "1"}}}
    // or "poly_algebroid": {"base_dim", "coordinates", "rank",
    //                       "generators", "anchor", "brackets"}
  },
  "grading": "negated" | "shifted2",
  "data": {
    "pi":     {"e1^e2": "1"},          // bivector, wedge-monomial keys
    "N":      [["2","0"],["0","2"]],   // rank x rank matrix
    "omega":  {"e1^e2": "-1"},         // 2-form table on dual monomials
    "H":      {"e1^e2^e3": "1"},       // 3-form table
    "alpha":  {},                      // 2-form for the manifold triple
    "lambda": "0",                     // declared scalar, optional
    "a": ["0","1"],                    // pencil coefficients a_1, a_2, ...
    "b": ["1","1"],                    // wedge-sum coefficients
    "n": 2                             // bracket index for the co-boundary check
  },
  "suite": {"i_max": 4, "m_max": 4, "n_max": 4, "poly_degree_bound": 1}
}
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .dualforms import DualForm, differential
from .elements import Element
from .forms import default_poly_family
from .graded import GradingConvention
from .instances import GradedInstance, LieAlgebraData, PolyAlgebroidData
from .report import Report
from .rings import InputError, parse_rational


@dataclass
class Scenario:
    name: str
    instance: GradedInstance
    pi: Element
    N: list
    omega: DualForm
    H: DualForm
    alpha: DualForm
    lam: Fraction | None
    pencil_coefficients: list
    wedge_coefficients: list
    bracket_index: int
    i_max: int = 4
    m_max: int = 4
    n_max: int = 4
    poly_degree_bound: int = 1
    preconditions: Report | None = None

    def test_family(self):
        if self.instance.ring.kind == "poly":
            return default_poly_family(self.instance, self.poly_degree_bound)
        return None


def _parse_brackets(raw, names) -> dict:
    index = {name: i for i, name in enumerate(names)}
    table = {}
    for key, coeffs in (raw or {}).items():
        parts = [p.strip() for p in str(key).split(",")]
        if len(parts) != 2 or any(p not in index for p in parts):
            raise InputError(f"bad bracket key {key!r}; expected 'e_i,e_j'")
        i, j = index[parts[0]], index[parts[1]]
        if i >= j:
            raise InputError(f"bracket key {key!r} must name generators in order")
        row = {}
        for target, value in coeffs.items():
            if target not in index:
                raise InputError(f"unknown generator {target!r} in bracket {key!r}")
            row[index[target]] = value
        table[(i, j)] = row
    return table


def _parse_monomial_key(key: str, names) -> tuple:
    index = {name: i for i, name in enumerate(names)}
    if key in ("", "1"):
        return ()
    parts = [p.strip() for p in str(key).split("^")]
    if any(p not in index for p in parts):
        raise InputError(f"unknown generator in monomial {key!r}")
    indices = tuple(index[p] for p in parts)
    if list(indices) != sorted(set(indices)):
        raise InputError(f"monomial {key!r} must list distinct generators in order")
    return indices


def _parse_element(raw, instance: GradedInstance) -> Element:
    terms = {}
    for key, value in (raw or {}).items():
        mon = _parse_monomial_key(key, instance.generator_names)
        terms[mon] = instance.ring.parse(value)
    return Element({m: c for m, c in terms.items() if c})


def _parse_dualform(raw, instance: GradedInstance, degree: int) -> DualForm:
    table = {}
    for key, value in (raw or {}).items():
        mon = _parse_monomial_key(key, instance.generator_names)
        if len(mon) != degree:
            raise InputError(f"{key!r} is not a degree-{degree} monomial")
        table[mon] = instance.ring.parse(value)
    return DualForm(instance, degree, table)


def _parse_matrix(raw, instance: GradedInstance) -> list:
    n = instance.rank
    raw = raw if raw is not None else [["0"] * n for _ in range(n)]
    if len(raw) != n or any(len(row) != n for row in raw):
        raise InputError(f"N must be a {n}x{n} matrix")
    return [[instance.ring.parse(v) for v in row] for row in raw]


def load_scenario(path) -> Scenario:
    """Parse, build and validate a scenario; InputError on any defect."""
    path = Path(path)
    if not path.exists():
        raise InputError(f"scenario file not found: {path}")
    try:
        raw = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"scenario does not parse: {exc}") from exc
    return build_scenario(raw, default_name=path.stem)


def build_scenario(raw: dict, default_name="scenario") -> Scenario:
    name = raw.get("name", default_name)
    inst_block = raw.get("instance") or {}
    convention = GradingConvention.parse(raw.get("grading", "negated"))
    if "lie_algebra" in inst_block:
        block = inst_block["lie_algebra"]
        names = tuple(block.get("basis") or (f"e{i+1}" for i in range(int(block["dim"]))))
        data = LieAlgebraData(
            int(block["dim"]), names,
            {k: {i: parse_rational(v) for i, v in row.items()}
             for k, row in _parse_brackets(block.get("brackets"), names).items()})
        instance = GradedInstance(data, convention, name=name)
    elif "poly_algebroid" in inst_block:
        block = inst_block["poly_algebroid"]
        coords = tuple(block.get("coordinates")
                       or (f"x{i+1}" for i in range(int(block["base_dim"]))))
        gens = tuple(block.get("generators")
                     or (f"a{i+1}" for i in range(int(block["rank"]))))
        shell = PolyAlgebroidData(int(block["base_dim"]), int(block["rank"]),
                                  coords, gens)
        ring = shell.ring
        anchor = block.get("anchor")
        if anchor is not None:
            anchor = [[ring.parse(v) for v in row] for row in anchor]
        brackets = {k: {i: ring.parse(v) for i, v in row.items()}
                    for k, row in _parse_brackets(block.get("brackets"), gens).items()}
        data = PolyAlgebroidData(int(block["base_dim"]), int(block["rank"]),
                                 coords, gens, anchor, brackets)
        instance = GradedInstance(data, convention, name=name)
    else:
        raise InputError("scenario needs an instance block"
                         " (lie_algebra or poly_algebroid)")

    data_block = raw.get("data") or {}
    pi = _parse_element(data_block.get("pi"), instance)
    if not pi.is_zero() and pi.wedge_degree() != 2:
        raise InputError("pi must be a bivector")
    N = _parse_matrix(data_block.get("N"), instance)
    omega = _parse_dualform(data_block.get("omega"), instance, 2)
    H = (_parse_dualform(data_block.get("H"), instance, 3)
         if instance.rank >= 3 else DualForm.zero(instance, 3))
    if instance.rank < 3 and data_block.get("H"):
        raise InputError("a 3-form needs rank >= 3")
    alpha = _parse_dualform(data_block.get("alpha"), instance, 2)
    lam = data_block.get("lambda")
    lam = None if lam is None else parse_rational(lam)
    a = [parse_rational(v) for v in data_block.get("a", ["0", "1"])]
    b = [parse_rational(v) for v in data_block.get("b", ["1"])]
    n = int(data_block.get("n", 2))
    suite = raw.get("suite") or {}
    scenario = Scenario(
        name=name, instance=instance, pi=pi, N=N, omega=omega, H=H, alpha=alpha,
        lam=lam, pencil_coefficients=a, wedge_coefficients=b, bracket_index=n,
        i_max=int(suite.get("i_max", 4)), m_max=int(suite.get("m_max", 4)),
        n_max=int(suite.get("n_max", 4)),
        poly_degree_bound=int(suite.get("poly_degree_bound", 1)),
    )
    scenario.preconditions = _preconditions(scenario)
    return scenario


def _preconditions(s: Scenario) -> Report:
    """Axioms already hold (instance construction validates them); record the
    data-level preconditions: Poisson when pi is given, dH = 0."""
    report = Report("validate", s.name)
    report.add("instance axioms",
               "Jacobi + Leibniz + anchor morphism + Gerstenhaber identities", True,
               detail="validated at load")
    if not s.pi.is_zero():
        poisson = s.instance.sn_bracket(s.pi, s.pi)
        report.add("pi Poisson", "[pi,pi] = 0", poisson.is_zero(),
                   counterexample=None if poisson.is_zero()
                   else s.instance.basis_label(poisson))
    dH = differential(s.H)
    report.add("closed background", "d H = 0", dH.is_zero(),
               counterexample=None if dH.is_zero() else dH.label())
    return report


def shipped_scenario_path(name: str) -> Path:
    base = resources.files("rnforms") / "scenarios" / f"{name}.json"
    with resources.as_file(base) as concrete:
        return Path(concrete)


def load_shipped(name: str) -> Scenario:
    return load_scenario(shipped_scenario_path(name))
