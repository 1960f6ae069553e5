"""Central plane arrangements in 3-space and affine line arrangements.

Hyperplanes are stored in a canonical normalization (first nonzero
coefficient scaled to 1) so that equality, distinctness and lexicographic
ordering are purely syntactic.  Arrangements carry a field tag (``rational``
or ``golden``) and coerce every coefficient into that field on construction,
which keeps cross-field arithmetic out of the geometry.

The module also owns the text file format::

    field rational            # or: field golden
    line 1 0 0                # a b c  for  a*x + b*y = c
    line 0 1 1/2
    # comments start with '#'; a file holds lines or planes, never both

and the deconing/coning constructions that relate the two kinds of
arrangement.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .scalar import (
    FIELDS,
    GOLDEN,
    RATIONAL,
    GoldenScalar,
    PHI,
    ScalarError,
    coerce_scalar,
    format_scalar,
    parse_scalar,
    sign,
)


class ArrangementError(ValueError):
    """Invalid arrangement data (duplicates, zero normals, bad indices)."""


class ParseError(ArrangementError):
    """Arrangement file syntax error; carries a 1-based line number."""

    def __init__(self, message: str, lineno: int):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def scale_first_nonzero(coeffs):
    """Scale a coefficient vector so its first nonzero entry equals 1."""
    pivot = None
    for c in coeffs:
        if sign(c) != 0:
            pivot = c
            break
    if pivot is None:
        raise ArrangementError("zero coefficient vector")
    return tuple(c / pivot for c in coeffs)


def dot3(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0])


def matrix_rank(rows) -> int:
    """Rank of a small matrix over the exact field, by Gaussian elimination."""
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if sign(m[r][col]) != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][col]
        for r in range(len(m)):
            if r != rank and sign(m[r][col]) != 0:
                f = m[r][col] / pv
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


@dataclass(frozen=True)
class AffineLine:
    """The line { (x, y) : a*x + b*y = c }, with (a, b) != (0, 0).

    Stored normalized: the first nonzero of (a, b) equals 1.
    """

    a: object
    b: object
    c: object

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if sign(a) == 0 and sign(b) == 0:
            raise ArrangementError("line with zero normal (a, b)")
        pivot = a if sign(a) != 0 else b
        object.__setattr__(self, "a", a / pivot)
        object.__setattr__(self, "b", b / pivot)
        object.__setattr__(self, "c", c / pivot)

    def coeffs(self):
        return (self.a, self.b, self.c)

    def direction(self):
        """A direction vector of the line (the normal rotated by +90 deg)."""
        return (-self.b, self.a)

    def contains(self, point) -> bool:
        x, y = point
        return sign(self.a * x + self.b * y - self.c) == 0

    def is_parallel(self, other: "AffineLine") -> bool:
        return sign(self.a * other.b - self.b * other.a) == 0

    def intersect(self, other: "AffineLine"):
        """Intersection point with another line, or None if parallel."""
        det = self.a * other.b - self.b * other.a
        if sign(det) == 0:
            return None
        x = (self.c * other.b - other.c * self.b) / det
        y = (self.a * other.c - other.a * self.c) / det
        return (x, y)


@dataclass(frozen=True)
class CentralPlane:
    """The plane { v : n . v = 0 } through the origin, n != 0, normalized."""

    n1: object
    n2: object
    n3: object

    def __post_init__(self):
        n1, n2, n3 = scale_first_nonzero((self.n1, self.n2, self.n3))
        object.__setattr__(self, "n1", n1)
        object.__setattr__(self, "n2", n2)
        object.__setattr__(self, "n3", n3)

    def normal(self):
        return (self.n1, self.n2, self.n3)


EDGE = "edge"
DIAGONAL = "diagonal"


@dataclass(frozen=True)
class LineArrangement:
    """An ordered sequence of pairwise-distinct affine lines over one field."""

    lines: tuple
    field: str = RATIONAL

    def __post_init__(self):
        lines = tuple(
            AffineLine(*(coerce_scalar(c, self.field) for c in ln.coeffs()))
            if isinstance(ln, AffineLine)
            else AffineLine(*(coerce_scalar(c, self.field) for c in ln))
            for ln in self.lines)
        if len(set(lines)) != len(lines):
            raise ArrangementError("duplicate line after normalization")
        object.__setattr__(self, "lines", lines)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def canonical(self) -> "LineArrangement":
        """Copy with lines in canonical (lexicographic) order."""
        return LineArrangement(tuple(sorted(self.lines, key=AffineLine.coeffs)),
                               self.field)


@dataclass(frozen=True)
class CentralArrangement:
    """Pairwise-distinct planes through the origin, with optional class labels."""

    planes: tuple
    field: str = RATIONAL
    labels: tuple = dc_field(default=())

    def __post_init__(self):
        planes = tuple(
            CentralPlane(*(coerce_scalar(c, self.field) for c in pl.normal()))
            if isinstance(pl, CentralPlane)
            else CentralPlane(*(coerce_scalar(c, self.field) for c in pl))
            for pl in self.planes)
        if len(set(planes)) != len(planes):
            raise ArrangementError("duplicate plane after normalization")
        labels = tuple(self.labels) if self.labels else (None,) * len(planes)
        if len(labels) != len(planes):
            raise ArrangementError("label count does not match plane count")
        object.__setattr__(self, "planes", planes)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.planes)

    def __iter__(self):
        return iter(self.planes)

    def rank(self) -> int:
        return matrix_rank([pl.normal() for pl in self.planes])

    def canonical(self) -> "CentralArrangement":
        order = sorted(range(len(self.planes)),
                       key=lambda i: self.planes[i].normal())
        return CentralArrangement(tuple(self.planes[i] for i in order),
                                  self.field,
                                  tuple(self.labels[i] for i in order))


def build_icosidodecahedral() -> CentralArrangement:
    """The 16-plane icosidodecahedral arrangement over Q(sqrt5).

    Six edge planes, normal to the five-fold vertex axes of the icosahedron
    (sign classes of (0, 1, phi) and its cyclic shifts), and ten diagonal
    planes: the four sign classes of (1, 1, 1) plus the cyclic shifts of
    (phi^2, +-1, 0).  With icosahedron vertices at the cyclic shifts of
    (0, +-1, +-phi), a pentagon diagonal such as the one from (0, 0, 2*phi)
    to (1, phi^2, phi) spans a central plane with normal (phi^2, -1, 0),
    and each such plane meets the solid in a hexagon of six diagonals.
    The construction is pinned by the Poincare polynomial
    1 + 16t + 75t^2 + 60t^3 in the test suite.
    """
    one = GoldenScalar(1)
    zero = GoldenScalar(0)
    phi = PHI
    phi2 = PHI * PHI
    edge_normals = []
    for s in (one, -one):
        edge_normals.append((zero, s, phi))
        edge_normals.append((s, phi, zero))
        edge_normals.append((phi, zero, s))
    diagonal_normals = [
        (one, one, one),
        (one, one, -one),
        (one, -one, one),
        (-one, one, one),
    ]
    for s in (one, -one):
        diagonal_normals.append((phi2, s, zero))
        diagonal_normals.append((zero, phi2, s))
        diagonal_normals.append((s, zero, phi2))
    planes = [CentralPlane(*n) for n in edge_normals + diagonal_normals]
    labels = [EDGE] * len(edge_normals) + [DIAGONAL] * len(diagonal_normals)
    return CentralArrangement(tuple(planes), GOLDEN, tuple(labels)).canonical()


def default_decone_index(arr: CentralArrangement) -> int:
    """First edge-labeled plane if any, else plane 0."""
    for i, lab in enumerate(arr.labels):
        if lab == EDGE:
            return i
    return 0


def decone(arr: CentralArrangement, index: int) -> LineArrangement:
    """Slice a rank-3 central arrangement by an affine plane.

    A deterministic linear change of coordinates sends plane ``index`` to
    {z = 0}; the remaining planes are intersected with {z = 1}, giving
    ``len(arr) - 1`` affine lines in canonical order.
    """
    if not 0 <= index < len(arr.planes):
        raise ArrangementError(f"decone index {index} out of range")
    if arr.rank() != 3:
        raise ArrangementError("decone requires a rank-3 arrangement")
    n = arr.planes[index].normal()
    k = next(i for i in range(3) if sign(n[i]) != 0)
    one = coerce_scalar(1, arr.field)
    zero = coerce_scalar(0, arr.field)

    def unit(i):
        return tuple(one if j == i else zero for j in range(3))

    # Basis: two vectors spanning the chosen plane (standard basis vectors
    # corrected along e_k by Gaussian elimination), completed by e_k.
    span = [tuple((one if j == i else zero) - (n[i] / n[k]) * (one if j == k else zero)
                  for j in range(3))
            for i in range(3) if i != k]
    basis = [span[0], span[1], unit(k)]
    lines = []
    for j, pl in enumerate(arr.planes):
        if j == index:
            continue
        m = pl.normal()
        a = dot3(m, basis[0])
        b = dot3(m, basis[1])
        c = -dot3(m, basis[2])
        if sign(a) == 0 and sign(b) == 0:
            # same plane as the one sent to infinity; excluded by distinctness
            raise ArrangementError("plane coincides with the plane at infinity")
        lines.append(AffineLine(a, b, c))
    return LineArrangement(tuple(lines), arr.field).canonical()


def cone(arr: LineArrangement) -> CentralArrangement:
    """Homogenize a line arrangement: a*x + b*y = c becomes a*x + b*y - c*z = 0,
    and the plane z = 0 is appended."""
    zero = coerce_scalar(0, arr.field)
    one = coerce_scalar(1, arr.field)
    planes = [CentralPlane(ln.a, ln.b, -ln.c) for ln in arr.lines]
    planes.append(CentralPlane(zero, zero, one))
    return CentralArrangement(tuple(planes), arr.field)


# -- file format -------------------------------------------------------------

def parse_arrangement(text: str):
    """Parse the arrangement file format; returns a LineArrangement or a
    CentralArrangement (exactly one kind of row may appear)."""
    field = None
    kind = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        tokens = stripped.split()
        if field is None:
            if len(tokens) != 2 or tokens[0] != "field":
                raise ParseError("expected 'field rational' or 'field golden'",
                                 lineno)
            if tokens[1] not in FIELDS:
                raise ParseError(f"unknown field {tokens[1]!r}", lineno)
            field = tokens[1]
            continue
        if tokens[0] not in ("line", "plane"):
            raise ParseError(f"expected 'line' or 'plane', got {tokens[0]!r}",
                             lineno)
        if kind is None:
            kind = tokens[0]
        elif tokens[0] != kind:
            raise ParseError("cannot mix 'line' and 'plane' rows", lineno)
        if len(tokens) != 4:
            raise ParseError(f"expected 3 coefficients, got {len(tokens) - 1}",
                             lineno)
        try:
            coeffs = tuple(parse_scalar(t, field) for t in tokens[1:])
            cell = (CentralPlane(*(coerce_scalar(c, field) for c in coeffs))
                    if kind == "plane"
                    else AffineLine(*(coerce_scalar(c, field)
                                      for c in coeffs)))
        except (ScalarError, ArrangementError) as exc:
            raise ParseError(str(exc), lineno) from exc
        if cell in (c for _, c in rows):
            raise ParseError(f"duplicate {kind} (after normalization)",
                             lineno)
        rows.append((lineno, cell))
    if field is None:
        raise ParseError("empty arrangement file", 1)
    cells = tuple(c for _, c in rows)
    if kind == "plane":
        return CentralArrangement(cells, field)
    return LineArrangement(cells, field)


def serialize_arrangement(arr) -> str:
    """Inverse of parse_arrangement up to canonical normalization."""
    out = [f"field {arr.field}"]
    if isinstance(arr, CentralArrangement):
        for pl in arr.planes:
            out.append("plane " + " ".join(format_scalar(c) for c in pl.normal()))
    else:
        for ln in arr.lines:
            out.append("line " + " ".join(format_scalar(c) for c in ln.coeffs()))
    return "\n".join(out) + "\n"


# -- builtin arrangements ----------------------------------------------------

def _boolean2() -> LineArrangement:
    return LineArrangement(((Fraction(1), Fraction(0), Fraction(0)),
                            (Fraction(0), Fraction(1), Fraction(0))), RATIONAL)


def _generic3() -> LineArrangement:
    return LineArrangement(((Fraction(1), Fraction(0), Fraction(0)),
                            (Fraction(0), Fraction(1), Fraction(0)),
                            (Fraction(1), Fraction(1), Fraction(1))), RATIONAL)


def _boolean3() -> CentralArrangement:
    return CentralArrangement(((Fraction(1), Fraction(0), Fraction(0)),
                               (Fraction(0), Fraction(1), Fraction(0)),
                               (Fraction(0), Fraction(0), Fraction(1))), RATIONAL)


BUILTINS = {
    "icosidodecahedral": build_icosidodecahedral,
    "boolean2": _boolean2,
    "boolean3": _boolean3,
    "generic3": _generic3,
}


def builtin(name: str):
    try:
        return BUILTINS[name]()
    except KeyError:
        raise ArrangementError(f"unknown builtin arrangement @{name}") from None
