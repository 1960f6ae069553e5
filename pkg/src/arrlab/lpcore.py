"""Exact linear feasibility over the rationals, with certificates.

Variables are implicitly nonnegative; rows are linear constraints with
relation <=, >=, or =.  ``solve_feasibility`` runs a phase-1 simplex with
Bland's anti-cycling rule over exact Fractions (deterministic pivot order,
hence bit-identical reruns).  A feasible outcome carries a rational witness;
an infeasible one carries Farkas multipliers; both are checkable by plain
arithmetic in ``check_certificate`` without consulting any solver state.

Certificate convention: one multiplier per original row.  A multiplier u on
a '>=' row scales the row as is, on a '<=' row it scales the negated row
(so u must be nonnegative for both inequality kinds), and on a '=' row it
may have either sign.  Infeasibility means the combined row has every
variable coefficient <= 0 while its right-hand side is positive, which no
nonnegative x can satisfy.

When an objective is present and the system is feasible, a phase-2 simplex
minimizes it; unboundedness is reported as its own outcome.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

try:  # exact rationals with much faster arithmetic, if present
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

LE = "<="
GE = ">="
EQ = "="

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPRow:
    coeffs: tuple
    rel: str
    rhs: object

    def __post_init__(self):
        if self.rel not in (LE, GE, EQ):
            raise ValueError(f"bad relation {self.rel!r}")
        object.__setattr__(self, "coeffs",
                           tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", Fraction(self.rhs))


@dataclass(frozen=True)
class StandardFormLP:
    """min objective . x  subject to rows, x >= 0 (objective optional)."""

    nvars: int
    rows: tuple
    objective: tuple | None = None

    def __post_init__(self):
        rows = tuple(r if isinstance(r, LPRow) else LPRow(*r)
                     for r in self.rows)
        for r in rows:
            if len(r.coeffs) != self.nvars:
                raise ValueError("row length does not match variable count")
        if len(set(rows)) != len(rows):
            raise ValueError("duplicate rows")
        obj = self.objective
        if obj is not None:
            obj = tuple(Fraction(c) for c in obj)
            if len(obj) != self.nvars:
                raise ValueError("objective length does not match")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "objective", obj)


@dataclass(frozen=True)
class FeasibilityResult:
    status: str
    witness: tuple | None = None  # rational point, len nvars
    certificate: tuple | None = None  # multipliers, one per original row
    objective_value: object | None = None


def _ge_form(lp: StandardFormLP):
    """Rows as (coeffs, rhs) meaning coeffs . x >= rhs, with a back-map
    [(original_row, sigma)] so '=' rows split into a +/- pair."""
    ge_rows = []
    back = []
    for idx, row in enumerate(lp.rows):
        if row.rel in (GE, EQ):
            ge_rows.append((row.coeffs, row.rhs))
            back.append((idx, 1))
        if row.rel in (LE, EQ):
            ge_rows.append((tuple(-c for c in row.coeffs), -row.rhs))
            back.append((idx, -1))
    return ge_rows, back


class _Tableau:
    """Dense simplex tableau over Fractions with Bland's rule.

    Internal rows arrive in ge-form (coeffs . x >= rhs) and are stored as
    equalities with a surplus column.  A row whose rhs is <= 0 is negated so
    its slack can start basic; only the remaining rows (violated by x = 0)
    receive an artificial column.
    """

    def __init__(self, ge_rows, nvars):
        zero = _Q(0)
        one = _Q(1)
        m = len(ge_rows)
        self.nx = nvars
        self.m = m
        self.negated = [b <= 0 for _, b in ge_rows]
        n_art = sum(1 for neg in self.negated if not neg)
        # columns: x (nvars) | slack (m) | artificial (n_art)
        self.ncols = nvars + m + n_art
        self.rows = []
        self.rhs = []
        self.basis = []
        self.init_col = []
        art = nvars + m
        for i, (coeffs, b) in enumerate(ge_rows):
            row = [_Q(c) for c in coeffs] + [zero] * (m + n_art)
            row[nvars + i] = -one  # surplus: a.x - s = b
            if self.negated[i]:
                row = [-c for c in row]
                b = -b
                self.basis.append(nvars + i)
                self.init_col.append(nvars + i)
            else:
                row[art] = one
                self.basis.append(art)
                self.init_col.append(art)
                art += 1
            self.rows.append(row)
            self.rhs.append(_Q(b))
        self.cost = [zero] * self.ncols
        for j in range(nvars + m, self.ncols):
            self.cost[j] = one
        self._rebuild_objective()

    def _rebuild_objective(self):
        # reduced costs z_j = c_j - sum over rows of c_basis * T[r][j]
        self.red = list(self.cost)
        for r, b in enumerate(self.basis):
            cb = self.cost[b]
            if cb:
                row = self.rows[r]
                for j in range(self.ncols):
                    if row[j]:
                        self.red[j] -= cb * row[j]

    def objective_value(self):
        return sum((self.cost[b] * self.rhs[r]
                    for r, b in enumerate(self.basis)
                    if self.cost[b]), _Q(0))

    def _pivot(self, r, col):
        row = self.rows[r]
        piv = row[col]
        if piv != 1:
            inv = 1 / piv
            for j, v in enumerate(row):
                if v:
                    row[j] = v * inv
            self.rhs[r] *= inv
        nz = [j for j, v in enumerate(row) if v]
        for rr in range(self.m):
            if rr == r:
                continue
            f = self.rows[rr][col]
            if f:
                target = self.rows[rr]
                for j in nz:
                    target[j] -= f * row[j]
                self.rhs[rr] -= f * self.rhs[r]
        f = self.red[col]
        if f:
            red = self.red
            for j in nz:
                red[j] -= f * row[j]
        self.basis[r] = col

    def run(self, allowed_cols):
        """Bland's rule simplex on the current cost; returns 'optimal' or
        'unbounded'."""
        while True:
            col = next((j for j in allowed_cols if self.red[j] < 0), None)
            if col is None:
                return "optimal"
            best = None
            for r in range(self.m):
                a = self.rows[r][col]
                if a > 0:
                    ratio = self.rhs[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return "unbounded"
            self._pivot(best[1], col)

    def solution(self):
        x = [Fraction(0)] * self.ncols
        for r, b in enumerate(self.basis):
            x[b] = Fraction(self.rhs[r].numerator, self.rhs[r].denominator)
        return x


def solve_feasibility(lp: StandardFormLP) -> FeasibilityResult:
    """Phase-1 simplex (plus phase-2 when an objective is given)."""
    ge_rows, back = _ge_form(lp)
    if not ge_rows:
        zero = Fraction(0)
        witness = (zero,) * lp.nvars
        if lp.objective is None:
            return FeasibilityResult(FEASIBLE, witness=witness)
        return FeasibilityResult(FEASIBLE, witness=witness,
                                 objective_value=zero)
    tab = _Tableau(ge_rows, lp.nvars)
    # artificial columns never re-enter once left
    tab.run(range(lp.nvars + tab.m))
    if tab.objective_value() > 0:
        # infeasible: read the duals y' off the columns that held the
        # initial identity (they now hold inv(B)); a multiplier for the
        # ge-form row is y' corrected for the rhs sign flip, and maps back
        # to the original row through sigma for '=' rows.
        mults = [Fraction(0)] * len(lp.rows)
        for k, (orig, sigma) in enumerate(back):
            col = tab.init_col[k]
            u = sum((tab.cost[b] * tab.rows[r][col]
                     for r, b in enumerate(tab.basis) if tab.cost[b]),
                    _Q(0))
            if tab.negated[k]:
                u = -u
            u = Fraction(u.numerator, u.denominator)
            mults[orig] += sigma * u if lp.rows[orig].rel == EQ else u
        return FeasibilityResult(INFEASIBLE, certificate=tuple(mults))
    if lp.objective is None:
        x = tab.solution()
        return FeasibilityResult(FEASIBLE, witness=tuple(x[:lp.nvars]))
    # phase 2: drive out lingering basic artificials, then minimize
    for r in range(tab.m):
        if tab.basis[r] >= lp.nvars + tab.m:
            col = next((j for j in range(lp.nvars + tab.m)
                        if tab.rows[r][j] != 0), None)
            if col is not None:
                tab._pivot(r, col)
    tab.cost = [_Q(c) for c in lp.objective] + [_Q(0)] * (tab.ncols - lp.nvars)
    tab._rebuild_objective()
    status = tab.run(range(lp.nvars + tab.m))
    if status == "unbounded":
        return FeasibilityResult(UNBOUNDED)
    x = tab.solution()
    val = tab.objective_value()
    return FeasibilityResult(FEASIBLE, witness=tuple(x[:lp.nvars]),
                             objective_value=Fraction(val.numerator,
                                                      val.denominator))


def _row_value(coeffs, x):
    acc = Fraction(0)
    for c, v in zip(coeffs, x):
        if c:
            acc += c * v
    return acc


def check_certificate(lp: StandardFormLP, result: FeasibilityResult) -> bool:
    """Independent arithmetic re-check of a witness or Farkas certificate."""
    if result.status == FEASIBLE:
        x = result.witness
        if x is None or len(x) != lp.nvars or any(v < 0 for v in x):
            return False
        for row in lp.rows:
            val = _row_value(row.coeffs, x)
            if row.rel == LE and not val <= row.rhs:
                return False
            if row.rel == GE and not val >= row.rhs:
                return False
            if row.rel == EQ and val != row.rhs:
                return False
        if lp.objective is not None and result.objective_value is not None:
            if _row_value(lp.objective, x) != result.objective_value:
                return False
        return True
    if result.status == INFEASIBLE:
        u = result.certificate
        if u is None or len(u) != len(lp.rows):
            return False
        combined = [Fraction(0)] * lp.nvars
        rhs = Fraction(0)
        for mult, row in zip(u, lp.rows):
            if row.rel == GE:
                if mult < 0:
                    return False
                s = mult
            elif row.rel == LE:
                if mult < 0:
                    return False
                s = -mult
            else:
                s = mult
            if s:
                for j, c in enumerate(row.coeffs):
                    combined[j] += s * c
                rhs += s * row.rhs
        return all(c <= 0 for c in combined) and rhs > 0
    return False
