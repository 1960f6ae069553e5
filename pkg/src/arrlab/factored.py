"""Factorization search for affine line arrangements.

A factorization is a partition of the lines into two nonempty parts such
that every cross-part pair of lines meets, and at every intersection point
one of the two parts contributes exactly one line.  The condition is encoded
literally: at a point whose incident lines split (c1, c2) across the parts,
we require c1 == 1 or c2 == 1.  In particular a double point with both lines
in one part gives counts (2, 0) and is forbidden, which is what drives the
propagation below.

``find_factorization`` runs an exhaustive backtracking search with unit
propagation; ``find_factorization_bruteforce`` tries all 2^n assignments and
exists to cross-check the search on small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import LineArrangement
from .poset import intersection_poset


@dataclass(frozen=True)
class Factorization:
    """Assignment of each line index to part 1 or part 2 (both nonempty)."""

    part1: frozenset
    part2: frozenset

    def part_of(self, line: int) -> int:
        return 1 if line in self.part1 else 2


def _incidence_data(arr: LineArrangement):
    """Line sets of all rank-2 flats, plus the parallel line pairs."""
    poset = intersection_poset(arr)
    flats = [sorted(f.hyperplanes) for f in poset.flats_of_rank(2)]
    n = len(arr.lines)
    parallel = [(i, j)
                for i in range(n) for j in range(i + 1, n)
                if arr.lines[i].is_parallel(arr.lines[j])]
    return flats, parallel


def is_valid_factorization(arr: LineArrangement, fac: Factorization) -> bool:
    """Re-check both defining conditions from scratch."""
    n = len(arr.lines)
    if fac.part1 | fac.part2 != set(range(n)) or fac.part1 & fac.part2:
        return False
    if not fac.part1 or not fac.part2:
        return False
    for i in fac.part1:
        for j in fac.part2:
            if arr.lines[i].is_parallel(arr.lines[j]):
                return False
    flats, _ = _incidence_data(arr)
    for line_set in flats:
        c1 = sum(1 for i in line_set if i in fac.part1)
        c2 = len(line_set) - c1
        if c1 != 1 and c2 != 1:
            return False
    return True


def find_factorization_bruteforce(arr: LineArrangement):
    """Try every assignment; None iff no factorization exists.

    Bitmask semantics: line k is in part 2 iff bit k of the mask is set.
    """
    n = len(arr.lines)
    if n < 2:
        return None
    flats, parallel = _incidence_data(arr)
    masks = [sum(1 << i for i in line_set) for line_set in flats]
    sizes = [len(line_set) for line_set in flats]
    for assign in range(1, (1 << n) - 1):
        ok = True
        for i, j in parallel:
            if ((assign >> i) & 1) != ((assign >> j) & 1):
                ok = False
                break
        if ok:
            for mask, size in zip(masks, sizes):
                c2 = bin(assign & mask).count("1")
                if c2 != 1 and size - c2 != 1:
                    ok = False
                    break
        if ok:
            part2 = frozenset(i for i in range(n) if (assign >> i) & 1)
            return Factorization(frozenset(range(n)) - part2, part2)
    return None


class _State:
    """Partial part assignment with unit propagation and a step trace."""

    def __init__(self, flats, parallel, n):
        self.flats = flats
        self.parallel = parallel
        self.n = n
        self.part = [0] * n  # 0 = unassigned
        self.trace = []
        self.contradiction = None

    def copy(self) -> "_State":
        dup = _State(self.flats, self.parallel, self.n)
        dup.part = list(self.part)
        dup.trace = list(self.trace)
        return dup

    def _fail(self, message: str) -> bool:
        self.contradiction = message
        return False

    def _set(self, line: int, part: int, reason: str) -> bool:
        if self.part[line] == part:
            return True
        if self.part[line] != 0:
            return self._fail(f"line {line} forced into part {part} "
                              f"({reason}) but already in part "
                              f"{self.part[line]}")
        self.part[line] = part
        self.trace.append((line, part, reason))
        return True

    def assign(self, line: int, part: int, reason: str) -> bool:
        """Set one line and propagate to a fixpoint; False on contradiction."""
        if not self._set(line, part, reason):
            return False
        changed = True
        while changed:
            changed = False
            for i, j in self.parallel:
                a, b = self.part[i], self.part[j]
                if a and b and a != b:
                    return self._fail(f"parallel lines {i} and {j} lie in "
                                      f"different parts but never meet")
                if a and not b:
                    if not self._set(j, a, f"parallel to line {i}"):
                        return False
                    changed = True
                elif b and not a:
                    if not self._set(i, b, f"parallel to line {j}"):
                        return False
                    changed = True
            for line_set in self.flats:
                step = self._propagate_flat(line_set)
                if step is None:
                    return False
                changed = changed or step
        return True

    @staticmethod
    def _feasible(c1: int, c2: int, u: int) -> bool:
        # can the remaining u free lines still make c1 == 1 or c2 == 1?
        return c1 <= 1 <= c1 + u or c2 <= 1 <= c2 + u

    def _propagate_flat(self, line_set):
        """One propagation pass at a point; True if something got forced,
        None on contradiction."""
        c1 = sum(1 for i in line_set if self.part[i] == 1)
        c2 = sum(1 for i in line_set if self.part[i] == 2)
        free = [i for i in line_set if self.part[i] == 0]
        u = len(free)
        where = "point " + "&".join(str(i) for i in line_set)
        if not self._feasible(c1, c2, u):
            self._fail(f"{where}: part counts ({c1},{c2}) can no longer "
                       f"put a single line on either side")
            return None
        forced_any = False
        for i in free:
            can1 = self._feasible(c1 + 1, c2, u - 1)
            can2 = self._feasible(c1, c2 + 1, u - 1)
            if can1 and can2:
                continue
            if not can1 and not can2:
                self._fail(f"{where}: line {i} fits in neither part, "
                           f"counts ({c1},{c2})")
                return None
            part = 1 if can1 else 2
            if not self._set(i, part, f"{where} forces it (counts "
                                      f"({c1},{c2}), otherwise no side "
                                      f"keeps a single line)"):
                return None
            forced_any = True
            # counts changed; let the outer fixpoint loop revisit this flat
            return True
        return forced_any

    def complete(self) -> bool:
        return all(self.part)

    def final_valid(self) -> bool:
        if not (1 in self.part and 2 in self.part):
            return False
        for line_set in self.flats:
            c1 = sum(1 for i in line_set if self.part[i] == 1)
            if c1 != 1 and len(line_set) - c1 != 1:
                return False
        return True


def _search(state: _State):
    if state.complete():
        return state if state.final_valid() else None
    line = state.part.index(0)
    for part in (1, 2):
        child = state.copy()
        if child.assign(line, part, "search choice"):
            found = _search(child)
            if found is not None:
                return found
    return None


def find_factorization(arr: LineArrangement):
    """Exhaustive backtracking search; None iff no factorization exists.

    Ties are broken by putting line 0 into part 1, which loses nothing since
    existence is invariant under swapping the parts.
    """
    n = len(arr.lines)
    if n < 2:
        raise ValueError("factorization needs at least 2 lines")
    flats, parallel = _incidence_data(arr)
    root = _State(flats, parallel, n)
    if not root.assign(0, 1, "seed"):
        return None
    found = _search(root)
    if found is None:
        return None
    fac = Factorization(frozenset(i for i in range(n) if found.part[i] == 1),
                        frozenset(i for i in range(n) if found.part[i] == 2))
    assert is_valid_factorization(arr, fac)
    return fac


def propagation_trace(arr: LineArrangement):
    """Seeded unit-propagation record, for explaining a failed search.

    Returns (steps, contradiction): the (line, part, reason) triples derived
    from 'line 0 in part 1', and the failing condition if propagation alone
    already hits one (as it does for the icosidodecahedral deconing).
    """
    flats, parallel = _incidence_data(arr)
    state = _State(flats, parallel, len(arr.lines))
    state.assign(0, 1, "seed")
    return state.trace, state.contradiction
