"""Weight-test machinery: circuits, constraint generation, verify and solve.

A weight system assigns a nonnegative rational to every corner of the
bounded complex.  Two families of linear conditions certify that the coned
arrangement is aspherical:

* asphericity: on each bounded face, corner weights sum to at most
  (number of face vertices) - 2;
* admissibility: on each vertex link, every circuit of the four generated
  types has weight sum at least 2.

Circuits are closed walks on a link; only their edge multiplicities matter
here.  On a link component with edges e_1 .. (a path, or cyclically for a
full cycle) and vertex multiplicity m, the four types contribute:

(i)   full cycle, every edge once (cycles only);
(ii)  a run of m+1 consecutive edges, each twice (needs k > m+1 vertices);
(iii) a run of m consecutive edges, each four times (needs k > m);
(iv)  a run of m consecutive edges, ends four times, interior twice
      (needs k > m).

On paths the start j ranges as in the side conditions above; on cycles all
rotations are generated and duplicates are removed by multiplicity vector.
Type (iii) dominates type (iv) termwise, which the tests pin down.

The linear program over the corner variables is solved exactly by lpcore;
an optional symmetry (corner permutations) shrinks variables to orbits,
which restricts the search to symmetric weight systems.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cells import BoundedComplex, CYCLE, Corner, Link
from .lpcore import (
    FEASIBLE,
    INFEASIBLE,
    LPRow,
    StandardFormLP,
    check_certificate,
    solve_feasibility,
)

TYPE_I = "i"
TYPE_II = "ii"
TYPE_III = "iii"
TYPE_IV = "iv"


class WeightError(ValueError):
    """Weight system is not total on the corners, or malformed."""


@dataclass(frozen=True)
class Circuit:
    """A generated circuit: edge multiplicities along one link component.

    ``counts[p]`` is the number of times the walk traverses the component's
    p-th link edge; ``corners[p]`` is the corner labelling that edge.
    ``steps`` is the walk length, which always equals sum(counts).
    """

    vertex: int
    ctype: str
    component: int
    start: int
    counts: tuple
    corners: tuple

    @property
    def steps(self) -> int:
        return sum(self.counts)


def _component_edge_labels(link: Link, comp_index: int):
    comp = link.components[comp_index]
    return comp.corners  # one corner per link edge position


def _raw_circuits(link: Link, m: int):
    """All circuits before deduplication, in deterministic order."""
    out = []
    for ci, comp in enumerate(link.components):
        labels = comp.corners
        if link.shape == CYCLE:
            k = len(comp.edges)  # == number of link edges == 2m
            out.append(Circuit(link.vertex, TYPE_I, ci, 0,
                               (1,) * k, labels))
            if k > m + 1:
                for j in range(k):
                    counts = [0] * k
                    for t in range(m + 1):
                        counts[(j + t) % k] = 2
                    out.append(Circuit(link.vertex, TYPE_II, ci, j,
                                       tuple(counts), labels))
            if k > m:
                for j in range(k):
                    counts = [0] * k
                    for t in range(m):
                        counts[(j + t) % k] = 4
                    out.append(Circuit(link.vertex, TYPE_III, ci, j,
                                       tuple(counts), labels))
                for j in range(k):
                    counts = [0] * k
                    for t in range(m):
                        counts[(j + t) % k] = 2
                    counts[j % k] = 4
                    counts[(j + m - 1) % k] = 4
                    out.append(Circuit(link.vertex, TYPE_IV, ci, j,
                                       tuple(counts), labels))
        else:
            kv = len(comp.edges)  # number of link vertices in this path
            ne = kv - 1  # number of link edges
            if kv > m + 1:
                for j in range(kv - m - 1):
                    counts = [0] * ne
                    for t in range(m + 1):
                        counts[j + t] = 2
                    out.append(Circuit(link.vertex, TYPE_II, ci, j,
                                       tuple(counts), labels))
            if kv > m:
                for j in range(kv - m):
                    counts = [0] * ne
                    for t in range(m):
                        counts[j + t] = 4
                    out.append(Circuit(link.vertex, TYPE_III, ci, j,
                                       tuple(counts), labels))
                for j in range(kv - m):
                    counts = [0] * ne
                    for t in range(m):
                        counts[j + t] = 2
                    counts[j] = 4
                    counts[j + m - 1] = 4
                    out.append(Circuit(link.vertex, TYPE_IV, ci, j,
                                       tuple(counts), labels))
    return out


def enumerate_circuits(link: Link, m: int | None = None):
    """Applicable circuits of the four types, deduplicated by multiplicity
    vector (rotations and mirror walks collapse)."""
    if m is None:
        m = link.multiplicity
    seen = set()
    out = []
    for c in _raw_circuits(link, m):
        key = (c.component, c.counts)
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def evaluate_circuit(weights, circuit: Circuit) -> Fraction:
    """Multiplicity-weighted sum of corner labels along the circuit."""
    total = Fraction(0)
    for count, corner in zip(circuit.counts, circuit.corners):
        if count:
            if corner not in weights:
                raise WeightError(f"missing corner {corner}")
            total += count * Fraction(weights[corner])
    return total


ASPHERICITY = "asphericity"
ADMISSIBILITY = "admissibility"
NONNEGATIVITY = "nonnegativity"


@dataclass(frozen=True)
class ConstraintRow:
    coeffs: tuple  # integer coefficient per variable
    rel: str
    rhs: int
    tag: str


@dataclass(frozen=True)
class ConstraintSystem:
    """Falk feasibility instance over corner variables (or symmetry orbits).

    ``variables`` lists one representative corner per variable; ``orbits``
    gives the full corner set behind each variable.  Nonnegativity of all
    variables is implicit.
    """

    variables: tuple
    orbits: tuple
    rows: tuple

    @property
    def var_of_corner(self):
        lookup = {}
        for idx, orbit in enumerate(self.orbits):
            for c in orbit:
                lookup[c] = idx
        return lookup


class SymmetryError(ValueError):
    """A supplied corner permutation does not preserve the constraints."""


def _corner_orbits(corners, symmetry):
    parent = {c: c for c in corners}

    def find(c):
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    for perm in symmetry:
        if set(perm) != set(corners) or set(perm.values()) != set(corners):
            raise SymmetryError("permutation is not a bijection on corners")
        for c, d in perm.items():
            ra, rb = find(c), find(d)
            if ra != rb:
                parent[ra] = rb
    orbits = {}
    for c in corners:
        orbits.setdefault(find(c), []).append(c)
    reps = sorted(orbits, key=lambda c: (c.vertex, c.face))
    return tuple(reps), tuple(tuple(sorted(orbits[r],
                                           key=lambda c: (c.vertex, c.face)))
                              for r in reps)


def build_constraints(gamma: BoundedComplex, *, equality_asphericity=False,
                      symmetry=None) -> ConstraintSystem:
    """Assemble the full constraint system of the bounded complex.

    One row per bounded face (corner weights sum to d(f) - 2, relation <=
    or = per the flag), one row per deduplicated circuit (weight sum >= 2).
    With a symmetry, variables become corner orbits and coefficients are
    accumulated over orbit members; the permutations must leave the
    unreduced system invariant.
    """
    corners = gamma.corners
    corner_rows = []
    for f in gamma.faces:
        coeffs = {Corner(v, f.id): 1 for v in f.vertex_ids}
        corner_rows.append((coeffs, "=" if equality_asphericity else "<=",
                            f.size - 2, f"{ASPHERICITY} face {f.id}"))
    for lk in gamma.links():
        for c in enumerate_circuits(lk):
            coeffs = {}
            for count, corner in zip(c.counts, c.corners):
                if count:
                    coeffs[corner] = coeffs.get(corner, 0) + count
            corner_rows.append(
                (coeffs, ">=", 2,
                 f"{ADMISSIBILITY} vertex {c.vertex} type ({c.ctype}) "
                 f"component {c.component} start {c.start}"))

    if symmetry:
        variables, orbits = _corner_orbits(corners, symmetry)
        _check_symmetry_invariance(corner_rows, symmetry)
    else:
        variables = corners
        orbits = tuple((c,) for c in corners)
    var_index = {}
    for idx, orbit in enumerate(orbits):
        for c in orbit:
            var_index[c] = idx

    rows = []
    seen = set()
    for coeffs, rel, rhs, tag in corner_rows:
        dense = [0] * len(variables)
        for corner, k in coeffs.items():
            dense[var_index[corner]] += k
        key = (tuple(dense), rel, rhs)
        if key in seen:
            continue
        seen.add(key)
        rows.append(ConstraintRow(tuple(dense), rel, rhs, tag))
    return ConstraintSystem(tuple(variables), orbits, tuple(rows))


def _check_symmetry_invariance(corner_rows, symmetry):
    rows_as_set = {}
    for coeffs, rel, rhs, _ in corner_rows:
        key = (frozenset(coeffs.items()), rel, rhs)
        rows_as_set[key] = rows_as_set.get(key, 0) + 1
    for perm in symmetry:
        permuted = {}
        for coeffs, rel, rhs, _ in corner_rows:
            key = (frozenset((perm[c], k) for c, k in coeffs.items()),
                   rel, rhs)
            permuted[key] = permuted.get(key, 0) + 1
        if permuted != rows_as_set:
            raise SymmetryError(
                "permutation does not preserve the corner incidence "
                "structure of the constraint system")


@dataclass(frozen=True)
class Violation:
    tag: str
    lhs: Fraction
    rel: str
    rhs: int


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    violations: tuple

    @property
    def verdict(self) -> str:
        return "PASS" if self.ok else "FAIL"


def verify(gamma: BoundedComplex, weights) -> VerifyReport:
    """Check a weight system against every constraint of the full system."""
    missing = [c for c in gamma.corners if c not in weights]
    if missing:
        raise WeightError(f"weight system misses {len(missing)} corners, "
                          f"first {missing[0]}")
    violations = []
    for c in gamma.corners:
        if Fraction(weights[c]) < 0:
            violations.append(Violation(
                f"{NONNEGATIVITY} corner ({c.vertex},{c.face})",
                Fraction(weights[c]), ">=", 0))
    system = build_constraints(gamma)
    for row in system.rows:
        lhs = Fraction(0)
        for coef, var in zip(row.coeffs, system.variables):
            if coef:
                lhs += coef * Fraction(weights[var])
        ok = (lhs <= row.rhs if row.rel == "<="
              else lhs >= row.rhs if row.rel == ">=" else lhs == row.rhs)
        if not ok:
            violations.append(Violation(row.tag, lhs, row.rel, row.rhs))
    return VerifyReport(not violations, tuple(violations))


@dataclass(frozen=True)
class SolveResult:
    status: str
    weights: dict | None
    system: ConstraintSystem
    lp: StandardFormLP
    lp_result: object

    @property
    def feasible(self) -> bool:
        return self.status == FEASIBLE


def solve(gamma: BoundedComplex, *, equality_asphericity=False,
          minimize_total=False, symmetry=None) -> SolveResult:
    """Search for a weight system via exact LP feasibility.

    A feasible outcome is a total nonnegative weight system that passes
    ``verify``; an infeasible one carries the lpcore Farkas certificate,
    which only certifies that this sufficient test fails (never that the
    arrangement is not aspherical).  ``minimize_total`` additionally
    minimizes the sum of all corner weights for small reproducible output.
    """
    system = build_constraints(gamma, equality_asphericity=equality_asphericity,
                               symmetry=symmetry)
    objective = None
    if minimize_total:
        objective = tuple(len(orbit) for orbit in system.orbits)
    lp = StandardFormLP(
        len(system.variables),
        tuple(LPRow(r.coeffs, r.rel, r.rhs) for r in system.rows),
        objective=objective)
    res = solve_feasibility(lp)
    if res.status != FEASIBLE:
        return SolveResult(res.status, None, system, lp, res)
    weights = {}
    for value, orbit in zip(res.witness, system.orbits):
        for corner in orbit:
            weights[corner] = value
    report = verify(gamma, weights)
    assert report.ok, "solver produced weights that fail verification"
    return SolveResult(FEASIBLE, weights, system, lp, res)
