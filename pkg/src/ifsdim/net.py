"""Net-interval structure of an equicontractive IFS, explored to saturation.

Level-n net intervals are the closed intervals between consecutive points of
{S_sigma(0), S_sigma(1) : |sigma| = n} whose interior meets the attractor.
Each is summarized by a characteristic vector: its normalized length, the
normalized offsets of the level-n cylinders covering it (the neighbour set,
listed in increasing order), and a sibling index separating same-length
children of one parent.  The system has finite type exactly when the set of
characteristic vectors reachable from [0, 1] is finite, which the explorer
detects by saturation.

Children of a net interval depend only on (length, neighbours); the sibling
index only disambiguates vertices of the transition diagram.  All coordinates
are exact field elements, so vector identity is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .field import FieldElement
from .ifs import IFSSystem

VectorKey = tuple  # ((length coeffs), (neighbour coeffs, ...))


class NetStructureError(RuntimeError):
    """Internal inconsistency or resource failure while exploring."""


class NotProvenFiniteTypeError(NetStructureError):
    """Exploration hit its budget before the vector set saturated."""

    def __init__(self, message: str, partial: "FiniteTypeStructure | None" = None):
        super().__init__(message)
        self.partial = partial


class PointNotInAttractorError(NetStructureError):
    """The queried point falls in a gap of the attractor."""

    def __init__(self, message: str, level: int):
        super().__init__(message)
        self.level = level


@dataclass(frozen=True)
class ChildRecord:
    """One child of a net interval, in parent-normalized coordinates."""

    child: int  # full vector id
    offset: FieldElement  # left endpoint relative to the parent, scaled by rho^-n
    edge_index: int
    gap_before: bool  # an excluded (attractor-free) stretch precedes this child
    abuts_left: bool
    abuts_right: bool
    # letter (j, k) satisfying d_letter = offset + c_j - rho * a_k, else None
    letters: tuple[tuple[int | None, ...], ...]


@dataclass
class ReducedVector:
    length: FieldElement
    neighbours: tuple[FieldElement, ...]
    level: int
    children: list[ChildRecord] | None = None


@dataclass(frozen=True)
class FullVector:
    reduced: int
    sibling_index: int


class FiniteTypeStructure:
    """The saturated table of characteristic vectors and child records."""

    def __init__(self, system: IFSSystem):
        self.system = system
        self.reduced: list[ReducedVector] = []
        self.fulls: list[FullVector] = []
        self._reduced_index: dict[VectorKey, int] = {}
        self._full_index: dict[tuple[int, int], int] = {}
        self.root_full: int = -1
        self.saturated: bool = False
        self.levels_explored: int = 0

    # -- registration (used by the explorer and the cache loader) ----------

    def _reduced_key(self, length: FieldElement, neighbours) -> VectorKey:
        return (length.coeffs, tuple(v.coeffs for v in neighbours))

    def register_reduced(self, length, neighbours, level) -> tuple[int, bool]:
        key = self._reduced_key(length, neighbours)
        rid = self._reduced_index.get(key)
        if rid is not None:
            return rid, False
        rid = len(self.reduced)
        self.reduced.append(ReducedVector(length, tuple(neighbours), level))
        self._reduced_index[key] = rid
        return rid, True

    def register_full(self, rid: int, sibling_index: int) -> int:
        key = (rid, sibling_index)
        fid = self._full_index.get(key)
        if fid is None:
            fid = len(self.fulls)
            self.fulls.append(FullVector(rid, sibling_index))
            self._full_index[key] = fid
        return fid

    # -- views ---------------------------------------------------------------

    @property
    def reduced_count(self) -> int:
        return len(self.reduced)

    @property
    def full_count(self) -> int:
        return len(self.fulls)

    def reduced_of(self, fid: int) -> int:
        return self.fulls[fid].reduced

    def children_of_reduced(self, rid: int) -> list[ChildRecord]:
        records = self.reduced[rid].children
        if records is None:
            raise NetStructureError(f"reduced vector {rid} was never expanded")
        return records

    def children_of_full(self, fid: int) -> list[ChildRecord]:
        return self.children_of_reduced(self.fulls[fid].reduced)

    def length_of_full(self, fid: int) -> FieldElement:
        return self.reduced[self.fulls[fid].reduced].length

    def neighbours_of_full(self, fid: int) -> tuple[FieldElement, ...]:
        return self.reduced[self.fulls[fid].reduced].neighbours

    def reduced_child_map(self) -> list[list[int]]:
        """Per reduced vector, the reduced ids of its children, left to right."""
        return [
            [self.reduced_of(rec.child) for rec in self.children_of_reduced(rid)]
            for rid in range(self.reduced_count)
        ]

    def reduced_signature(self, rid: int) -> tuple[Fraction, tuple[Fraction, ...]]:
        """Approximate (length, neighbours) for display, exact when rational."""
        vec = self.reduced[rid]
        eps = Fraction(1, 10**12)
        return vec.length.approx(eps), tuple(v.approx(eps) for v in vec.neighbours)

    def edge_count(self) -> int:
        return sum(len(self.children_of_reduced(r)) for r in range(self.reduced_count))

    def describe(self) -> dict:
        return {
            "reduced_vectors": self.reduced_count,
            "full_vectors": self.full_count,
            "edges": self.edge_count(),
            "saturated": self.saturated,
            "levels_explored": self.levels_explored,
        }


# ---------------------------------------------------------------------------
# exploration
# ---------------------------------------------------------------------------

class _Explorer:
    def __init__(self, system: IFSSystem):
        self.system = system
        self.rho = system.rho
        self.rho_inv = system.rho.inverse()
        self.zero = system.context.zero
        self.one = system.context.one
        self._letter_of = {d.coeffs: j for j, d in enumerate(system.translations)}
        self._gap_memo: dict[VectorKey, bool] = {}

    # raw one-level subdivision of a signature (length, neighbours)
    def subdivide(self, length: FieldElement, neighbours):
        rho = self.rho
        starts: dict[tuple, FieldElement] = {}
        for c in neighbours:
            for d in self.system.translations:
                s = d - c
                starts.setdefault(s.coeffs, s)
        cuts: dict[tuple, FieldElement] = {
            self.zero.coeffs: self.zero,
            length.coeffs: length,
        }
        for s in starts.values():
            for cand in (s, s + rho):
                if cand.coeffs in cuts:
                    continue
                if cand.sign() > 0 and (cand - length).sign() < 0:
                    cuts[cand.coeffs] = cand
        ordered = sorted(cuts.values())
        pieces = []
        start_list = list(starts.values())
        for u, v in zip(ordered, ordered[1:]):
            ell_child = (v - u) * self.rho_inv
            lo = v - rho  # covering requires s in [v - rho, u]
            ws: dict[tuple, FieldElement] = {}
            covers: list[FieldElement] = []
            for s in start_list:
                if (s - u).sign() <= 0 and (s - lo).sign() >= 0:
                    w = (u - s) * self.rho_inv
                    if w.coeffs not in ws:
                        ws[w.coeffs] = w
                        covers.append(w)
            pieces.append((u, v, ell_child, tuple(sorted(covers))))
        return pieces

    def meets_attractor(self, length: FieldElement, neighbours) -> bool:
        """Whether the interior of an interval with this signature meets K.

        Splitting produces an interior endpoint (a point of K) exactly when
        the interval meets the attractor; otherwise the signature passes to
        its single child, whose normalized length grows by 1/rho, so the
        walk is finite: it ends with a split or with no covering cylinder.
        """
        chain: list[VectorKey] = []
        key = (length.coeffs, tuple(v.coeffs for v in neighbours))
        result = None
        guard = 0
        while True:
            cached = self._gap_memo.get(key)
            if cached is not None:
                result = cached
                break
            if not neighbours:
                result = False
                break
            chain.append(key)
            pieces = self.subdivide(length, neighbours)
            if len(pieces) > 1:
                result = True
                break
            _, _, length, neighbours = pieces[0]
            key = (length.coeffs, tuple(v.coeffs for v in neighbours))
            guard += 1
            if guard > 100000:
                raise NetStructureError("attractor membership walk failed to terminate")
        for k in chain:
            self._gap_memo[k] = result
        return result

    def expand(self, structure: FiniteTypeStructure, rid: int) -> list[ChildRecord]:
        vec = structure.reduced[rid]
        pieces = self.subdivide(vec.length, vec.neighbours)
        records: list[ChildRecord] = []
        gap_pending = False
        sibling_counts: dict[tuple, int] = {}
        last_piece = len(pieces) - 1
        for idx, (u, v, ell_child, ws) in enumerate(pieces):
            if not ws or not self.meets_attractor(ell_child, ws):
                gap_pending = True
                continue
            r = sibling_counts.get(ell_child.coeffs, 0) + 1
            sibling_counts[ell_child.coeffs] = r
            child_rid, is_new = structure.register_reduced(ell_child, ws, vec.level + 1)
            child_fid = structure.register_full(child_rid, r)
            letters = self._letters(vec.neighbours, u, ws)
            records.append(
                ChildRecord(
                    child=child_fid,
                    offset=u,
                    edge_index=len(records),
                    gap_before=gap_pending,
                    abuts_left=(idx == 0),
                    abuts_right=(idx == last_piece),
                    letters=letters,
                )
            )
            gap_pending = False
        if not records:
            raise NetStructureError("net interval without children (interior met K)")
        return records

    def _letters(self, parent_neighbours, offset, child_neighbours):
        rho = self.rho
        rows = []
        for c in parent_neighbours:
            base = offset + c
            row = []
            for a in child_neighbours:
                row.append(self._letter_of.get((base - rho * a).coeffs))
            rows.append(tuple(row))
        return tuple(rows)


def explore(
    system: IFSSystem,
    max_vectors: int = 100000,
    max_level: int = 200,
) -> FiniteTypeStructure:
    """Breadth-first saturation of the characteristic-vector set.

    Raises NotProvenFiniteTypeError (with the partial structure attached)
    if either budget is exhausted first; that outcome cannot distinguish a
    slow saturation from genuinely infinite type.
    """
    ex = _Explorer(system)
    structure = FiniteTypeStructure(system)
    root_rid, _ = structure.register_reduced(ex.one, (ex.zero,), 0)
    structure.root_full = structure.register_full(root_rid, 1)
    queue = [root_rid]
    head = 0
    while head < len(queue):
        rid = queue[head]
        head += 1
        level = structure.reduced[rid].level
        if level > max_level:
            structure.levels_explored = level
            raise NotProvenFiniteTypeError(
                f"no saturation within {max_level} levels "
                f"({structure.reduced_count} reduced vectors so far)",
                partial=structure,
            )
        before = structure.reduced_count
        structure.reduced[rid].children = ex.expand(structure, rid)
        structure.levels_explored = max(structure.levels_explored, level + 1)
        for new_rid in range(before, structure.reduced_count):
            queue.append(new_rid)
        if structure.full_count > max_vectors:
            raise NotProvenFiniteTypeError(
                f"vector budget {max_vectors} exhausted "
                f"({structure.reduced_count} reduced vectors so far)",
                partial=structure,
            )
    structure.saturated = True
    return structure


# ---------------------------------------------------------------------------
# walking actual net intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NetInterval:
    level: int
    left: FieldElement
    full: int
    edges: tuple[int, ...]


def iter_net_intervals(structure: FiniteTypeStructure, level: int) -> Iterator[NetInterval]:
    """All level-n net intervals, left to right, with their root paths."""
    system = structure.system
    rho_pow = [system.context.one]
    for _ in range(level):
        rho_pow.append(rho_pow[-1] * system.rho)

    def rec(depth: int, left: FieldElement, fid: int, edges: tuple[int, ...]):
        if depth == level:
            yield NetInterval(depth, left, fid, edges)
            return
        for record in structure.children_of_full(fid):
            child_left = left + rho_pow[depth] * record.offset
            yield from rec(depth + 1, child_left, record.child, edges + (record.edge_index,))

    yield from rec(0, system.context.zero, structure.root_full, ())


def path_fulls(structure: FiniteTypeStructure, edges: Sequence[int]) -> list[int]:
    fulls = [structure.root_full]
    for e in edges:
        records = structure.children_of_full(fulls[-1])
        fulls.append(records[e].child)
    return fulls


def path_left_endpoint(structure: FiniteTypeStructure, edges: Sequence[int]) -> FieldElement:
    system = structure.system
    left = system.context.zero
    power = system.context.one
    fid = structure.root_full
    for e in edges:
        record = structure.children_of_full(fid)[e]
        left = left + power * record.offset
        power = power * system.rho
        fid = record.child
    return left


# ---------------------------------------------------------------------------
# point location
# ---------------------------------------------------------------------------

@dataclass
class Representation:
    """One symbolic address of a point: a root path of edge choices.

    side 'interior': the point stays interior to every interval of the path.
    side 'left'/'right': intervals lie on that side of the point, which is
    their shared right/left endpoint from the boundary level onward.
    A detected eventual period is (start, period) over edge positions.
    """

    side: str
    edges: list[int]
    fulls: list[int]
    cycle: tuple[int, int] | None = None
    alive: bool = True


@dataclass
class PointLocation:
    boundary: bool
    boundary_level: int | None
    representations: list[Representation]


def locate_point(structure: FiniteTypeStructure, x, depth: int = 60) -> PointLocation:
    """Resolve a point of [0, 1] to its symbolic address(es).

    Boundary points (endpoints of some net interval) get one or two forced
    representations; interior points descend until `depth` or until the
    (vector, relative position) state repeats, which pins an exact period.
    """
    system = structure.system
    ctx = system.context
    if not isinstance(x, FieldElement):
        x = ctx.element(x if isinstance(x, (list, tuple)) else [x])
    if x.sign() < 0 or (x - 1).sign() > 0:
        raise PointNotInAttractorError("point outside the hull [0, 1]", level=0)

    rho = system.rho
    rho_inv = rho.inverse()
    fid = structure.root_full
    edges: list[int] = []
    fulls = [fid]
    u = x
    seen: dict[tuple, int] = {}

    while len(edges) < depth:
        state = (fid, u.coeffs)
        pos = seen.get(state)
        if pos is not None:
            rep = Representation("interior", edges, fulls, cycle=(pos, len(edges) - pos))
            return PointLocation(False, None, [rep])
        seen[state] = len(edges)

        records = structure.children_of_full(fid)
        placed = None
        for i, rec in enumerate(records):
            t = rec.offset
            end = t + rho * structure.length_of_full(rec.child)
            c_left = (u - t).sign()
            if c_left < 0:
                raise PointNotInAttractorError(
                    f"point lies in an attractor-free gap at level {len(edges) + 1}",
                    level=len(edges) + 1,
                )
            if c_left == 0:
                if i > 0 and not rec.gap_before:
                    return _boundary(structure, edges, fulls, i - 1, i, depth)
                # x == 0 at the root, or the right edge of a gap
                return _boundary(structure, edges, fulls, None, i, depth)
            c_right = (u - end).sign()
            if c_right < 0:
                placed = (i, rec, t)
                break
            if c_right == 0:
                if i + 1 < len(records) and not records[i + 1].gap_before:
                    return _boundary(structure, edges, fulls, i, i + 1, depth)
                return _boundary(structure, edges, fulls, i, None, depth)
        if placed is None:
            raise PointNotInAttractorError(
                f"point lies in an attractor-free gap at level {len(edges) + 1}",
                level=len(edges) + 1,
            )
        i, rec, t = placed
        u = (u - t) * rho_inv
        edges.append(i)
        fulls.append(rec.child)
        fid = rec.child

    rep = Representation("interior", edges, fulls, cycle=None)
    return PointLocation(False, None, [rep])


def _boundary(structure, edges, fulls, left_idx, right_idx, depth) -> PointLocation:
    boundary_level = len(edges) + 1
    reps = []
    if left_idx is not None:
        reps.append(_forced_chain(structure, edges, fulls, left_idx, "left", depth))
    if right_idx is not None:
        reps.append(_forced_chain(structure, edges, fulls, right_idx, "right", depth))
    return PointLocation(True, boundary_level, reps)


def _forced_chain(structure, edges, fulls, first_edge, side, depth) -> Representation:
    """Extend a boundary representation; on side 'left' the point is the
    right endpoint of every interval, so each step must take the rightmost
    child and that child must abut the parent's right end (symmetrically
    for side 'right').  The chain dies if the required child is missing."""
    rep_edges = list(edges) + [first_edge]
    rec = structure.children_of_full(fulls[-1])[first_edge]
    rep_fulls = list(fulls) + [rec.child]
    alive = True
    cycle = None
    seen = {rep_fulls[-1]: len(rep_edges)}
    while len(rep_edges) < depth:
        records = structure.children_of_full(rep_fulls[-1])
        rec = records[-1] if side == "left" else records[0]
        ok = rec.abuts_right if side == "left" else rec.abuts_left
        if not ok:
            alive = False
            break
        rep_edges.append(rec.edge_index)
        rep_fulls.append(rec.child)
        pos = seen.get(rec.child)
        if pos is not None:
            cycle = (pos, len(rep_edges) - pos)
            break
        seen[rec.child] = len(rep_edges)
    return Representation(side, rep_edges, rep_fulls, cycle=cycle, alive=alive)
