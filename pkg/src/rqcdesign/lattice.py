"""Planar lattice geometry for Sycamore-style processors.

Coordinate conventions:
  - drawing frame: qubits sit at integer (x, y) with x + y even, couplers run
    along the diagonals.  This is how the chips are usually drawn.
  - canonical frame: (u, v) = ((x + y) / 2, (y - x) / 2), i.e. the drawing
    rotated 45 degrees onto a unit square grid.  All geometry in this module
    is canonical; x = u - v, y = u + v recovers the drawing.

Bond families:
  - F1 bonds join (u, v)-(u+1, v); they form one row per v value.
  - F2 bonds join (u, v)-(u, v+1); one row per u value.
  - A bond's offset is the lower endpoint coordinate along its row (u for F1,
    v for F2).  Offset parity (0 = even, 1 = odd) is what the pattern
    bitstrings select, and it is taken from the absolute coordinate so it is
    stable under defects.

The dual graph has one site per plaquette.  Plaquette (u, v) is the unit face
whose corners are (u, v), (u+1, v), (u, v+1), (u+1, v+1).  A dual site is kept
when at least one corner belongs to the region footprint, and flagged as
boundary when at least one corner falls outside the footprint.  Defective
qubits stay inside the footprint for this purpose: cut paths are searched on
the defect-free geometry and defects only remove the bonds they touch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Literal, Mapping

from .errors import DegenerateCutError, InvalidSpec

Coord = tuple[int, int]
Family = Literal["F1", "F2"]

GRID = "grid"
WINDOW = "window"
MASK = "mask"

_PLAQUETTE_CORNERS = ((0, 0), (1, 0), (0, 1), (1, 1))


def to_drawing(coord: Coord) -> Coord:
    u, v = coord
    return (u - v, u + v)


def to_canonical(coord: Coord) -> Coord:
    x, y = coord
    if (x + y) % 2:
        raise InvalidSpec(f"({x}, {y}) is not a lattice site: x + y must be even")
    return ((x + y) // 2, (y - x) // 2)


@dataclass(frozen=True)
class LatticeSpec:
    """Region plus defects defining a processor lattice.

    mode "grid":   width x height block in canonical coordinates; defects in
                   canonical (u, v).
    mode "window": xsize x ysize rectangle in the drawing frame with qubits on
                   even-parity (x + y) sites; defects in drawing (x, y).
    mode "mask":   explicit canonical site list; defects in canonical (u, v).
    """

    mode: str
    width: int = 0
    height: int = 0
    xsize: int = 0
    ysize: int = 0
    sites: tuple[Coord, ...] = ()
    defects: tuple[Coord, ...] = ()

    def footprint(self) -> frozenset[Coord]:
        """All region sites in canonical coordinates, defects included."""
        if self.mode == GRID:
            if self.width <= 0 or self.height <= 0:
                raise InvalidSpec("grid mode needs positive width and height")
            return frozenset(
                (u, v) for u in range(self.width) for v in range(self.height)
            )
        if self.mode == WINDOW:
            if self.xsize <= 0 or self.ysize <= 0:
                raise InvalidSpec("window mode needs positive xsize and ysize")
            return frozenset(
                to_canonical((x, y))
                for x in range(self.xsize)
                for y in range(self.ysize)
                if (x + y) % 2 == 0
            )
        if self.mode == MASK:
            if not self.sites:
                raise InvalidSpec("mask mode needs a nonempty site list")
            if len(set(self.sites)) != len(self.sites):
                raise InvalidSpec("mask mode: duplicate sites")
            return frozenset(self.sites)
        raise InvalidSpec(f"unknown lattice mode {self.mode!r}")

    def canonical_defects(self) -> tuple[Coord, ...]:
        """Defects converted to canonical coordinates, validated against the region."""
        region = self.footprint()
        seen: set[Coord] = set()
        out: list[Coord] = []
        for raw in self.defects:
            coord = to_canonical(raw) if self.mode == WINDOW else tuple(raw)
            if coord not in region:
                raise InvalidSpec(f"defect {raw} lies outside the region")
            if coord in seen:
                raise InvalidSpec(f"duplicate defect {raw}")
            seen.add(coord)
            out.append(coord)
        return tuple(out)


@dataclass(frozen=True)
class Bond:
    id: int
    family: Family
    row: int  # v for F1, u for F2
    offset: int  # lower endpoint u (F1) / v (F2)
    a: int  # qubit ids, a < b
    b: int

    @property
    def parity(self) -> int:
        return self.offset & 1


@dataclass(frozen=True)
class Lattice:
    spec: LatticeSpec
    coords: tuple[Coord, ...]  # qubit id -> canonical coordinate
    qubit_ids: Mapping[Coord, int] = field(repr=False)
    bonds: tuple[Bond, ...] = field(repr=False)
    rows_f1: tuple[int, ...]  # v values of F1 rows holding >= 1 bond
    rows_f2: tuple[int, ...]  # u values of F2 rows holding >= 1 bond
    defects: tuple[Coord, ...]
    footprint: frozenset[Coord] = field(repr=False)

    @property
    def n_qubits(self) -> int:
        return len(self.coords)

    @property
    def m(self) -> int:
        return len(self.rows_f1)

    @property
    def n(self) -> int:
        return len(self.rows_f2)

    def row_index(self, bond: Bond) -> int:
        """Position of the bond's row in the pattern bitstring for its family."""
        rows = self.rows_f1 if bond.family == "F1" else self.rows_f2
        return rows.index(bond.row)

    def family_bonds(self, family: Family) -> tuple[Bond, ...]:
        return tuple(b for b in self.bonds if b.family == family)


def build_lattice(spec: LatticeSpec) -> Lattice:
    """Construct the lattice for a spec with deterministic qubit/bond ids.

    Qubits are numbered in (u, v) lexicographic order; bonds are numbered
    F1-first, each family sorted by (row, offset).
    """
    footprint = spec.footprint()
    defects = spec.canonical_defects()
    present = footprint - set(defects)
    if not present:
        raise InvalidSpec("no qubits left after defect removal")

    coords = tuple(sorted(present))
    qubit_ids = {c: i for i, c in enumerate(coords)}

    raw_f1 = []
    raw_f2 = []
    for u, v in coords:
        if (u + 1, v) in qubit_ids:
            raw_f1.append((v, u))  # (row, offset)
        if (u, v + 1) in qubit_ids:
            raw_f2.append((u, v))
    raw_f1.sort()
    raw_f2.sort()

    bonds: list[Bond] = []
    for row, offset in raw_f1:
        a = qubit_ids[(offset, row)]
        b = qubit_ids[(offset + 1, row)]
        bonds.append(Bond(len(bonds), "F1", row, offset, min(a, b), max(a, b)))
    for row, offset in raw_f2:
        a = qubit_ids[(row, offset)]
        b = qubit_ids[(row, offset + 1)]
        bonds.append(Bond(len(bonds), "F2", row, offset, min(a, b), max(a, b)))

    rows_f1 = tuple(sorted({row for row, _ in raw_f1}))
    rows_f2 = tuple(sorted({row for row, _ in raw_f2}))
    return Lattice(
        spec=spec,
        coords=coords,
        qubit_ids=qubit_ids,
        bonds=tuple(bonds),
        rows_f1=rows_f1,
        rows_f2=rows_f2,
        defects=defects,
        footprint=footprint,
    )


@dataclass(frozen=True)
class DualGraph:
    """Plaquette graph used to draw cut paths.

    Each dual edge crosses exactly one (possibly absent) lattice bond:
    a horizontal dual step (u, v)-(u+1, v) crosses the F2 bond
    (u+1, v)-(u+1, v+1); a vertical step (u, v)-(u, v+1) crosses the F1 bond
    (u, v+1)-(u+1, v+1).
    """

    lattice: Lattice
    sites: tuple[Coord, ...]
    boundary: frozenset[Coord] = field(repr=False)
    neighbours: Mapping[Coord, tuple[Coord, ...]] = field(repr=False)
    crossed: Mapping[tuple[Coord, Coord], int | None] = field(repr=False)

    @property
    def interior(self) -> tuple[Coord, ...]:
        return tuple(s for s in self.sites if s not in self.boundary)

    def bond_across(self, s: Coord, t: Coord) -> int | None:
        """Id of the existing bond crossed by dual edge (s, t), else None."""
        return self.crossed[(s, t) if s <= t else (t, s)]


def build_dual(lattice: Lattice) -> DualGraph:
    """Dual graph covering every plaquette that touches the region footprint."""
    footprint = lattice.footprint
    sites: set[Coord] = set()
    for u, v in footprint:
        for du, dv in _PLAQUETTE_CORNERS:
            sites.add((u - du, v - dv))
    boundary = frozenset(
        (u, v)
        for (u, v) in sites
        if any((u + du, v + dv) not in footprint for du, dv in _PLAQUETTE_CORNERS)
    )

    bond_lookup: dict[frozenset[int], int] = {
        frozenset((b.a, b.b)): b.id for b in lattice.bonds
    }

    def crossing(s: Coord, t: Coord) -> int | None:
        (u1, v1), (u2, v2) = sorted((s, t))
        if v1 == v2:
            pa, pb = (u2, v1), (u2, v1 + 1)
        else:
            pa, pb = (u1, v2), (u1 + 1, v2)
        qa = lattice.qubit_ids.get(pa)
        qb = lattice.qubit_ids.get(pb)
        if qa is None or qb is None:
            return None
        return bond_lookup.get(frozenset((qa, qb)))

    ordered = tuple(sorted(sites))
    neighbours: dict[Coord, tuple[Coord, ...]] = {}
    crossed: dict[tuple[Coord, Coord], int | None] = {}
    for s in ordered:
        u, v = s
        nbrs = [
            t
            for t in ((u - 1, v), (u + 1, v), (u, v - 1), (u, v + 1))
            if t in sites
        ]
        neighbours[s] = tuple(sorted(nbrs))
        for t in nbrs:
            key = (s, t) if s <= t else (t, s)
            if key not in crossed:
                crossed[key] = crossing(s, t)

    return DualGraph(
        lattice=lattice,
        sites=ordered,
        boundary=boundary,
        neighbours=neighbours,
        crossed=crossed,
    )


@dataclass(frozen=True)
class CutPath:
    """Open boundary-to-boundary path on the dual graph.

    sites are dual coordinates; crossed_bonds lists the ids of the existing
    bonds crossed, in path order (absent bonds contribute nothing).
    """

    sites: tuple[Coord, ...]
    crossed_bonds: tuple[int, ...]

    @property
    def edges(self) -> int:  # E
        return len(self.sites) - 1

    @property
    def effective_edges(self) -> int:  # E_eff
        return len(self.crossed_bonds)


def make_cut_path(dual: DualGraph, sites: Iterable[Coord]) -> CutPath:
    """Validate a dual-site sequence and attach its crossed-bond list."""
    seq = tuple(tuple(s) for s in sites)
    if len(seq) < 2:
        raise InvalidSpec("a cut path needs at least two dual sites")
    if len(set(seq)) != len(seq):
        raise InvalidSpec("cut path revisits a dual site")
    site_set = set(dual.sites)
    for s in seq:
        if s not in site_set:
            raise InvalidSpec(f"dual site {s} does not exist")
    for s, t in zip(seq, seq[1:]):
        if abs(s[0] - t[0]) + abs(s[1] - t[1]) != 1:
            raise InvalidSpec(f"dual sites {s} and {t} are not adjacent")
    if seq[0] not in dual.boundary or seq[-1] not in dual.boundary:
        raise InvalidSpec("cut path endpoints must be boundary dual sites")
    for s in seq[1:-1]:
        if s in dual.boundary:
            raise InvalidSpec(f"interior path site {s} is a boundary dual site")
    crossed = tuple(
        bid
        for s, t in zip(seq, seq[1:])
        if (bid := dual.bond_across(s, t)) is not None
    )
    return CutPath(sites=seq, crossed_bonds=crossed)


@dataclass(frozen=True)
class Bipartition:
    """Two-sided split of the present qubits; side 0 holds qubit id 0."""

    sides: tuple[int, ...]
    n1: int
    n2: int


def _ray_side(coord: Coord, vsegs, hsegs, vrays, hrays) -> int:
    """Crossing parity of a ray from the qubit against the cut polyline.

    Everything runs in doubled integer coordinates (qubits at even points,
    dual sites at odd points) with ray direction (1, 2), which cannot touch a
    polyline vertex or run parallel to any axis-aligned segment, so every
    test below is exact integer arithmetic.
    """
    xq, yq = 2 * coord[0], 2 * coord[1]
    hits = 0
    for x, y_mid in vsegs:  # vertical segment: crossing height is its middle
        if x > xq and yq + 2 * (x - xq) == y_mid:
            hits += 1
    for y, x_lo2, x_hi2 in hsegs:  # horizontal segment, doubled-x bounds
        if y > yq and x_lo2 < 2 * xq + (y - yq) < x_hi2:
            hits += 1
    for x, y0, up in vrays:  # vertical half-line from a path endpoint
        if x > xq:
            y_hit = yq + 2 * (x - xq)
            if (y_hit > y0) if up else (y_hit < y0):
                hits += 1
    for y, x0_2, right in hrays:  # horizontal half-line
        if y > yq:
            x2 = 2 * xq + (y - yq)
            if (x2 > x0_2) if right else (x2 < x0_2):
                hits += 1
    return hits & 1


def _polyline(path: CutPath):
    pts = [(2 * u + 1, 2 * v + 1) for u, v in path.sites]
    vsegs = []
    hsegs = []
    for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
        if x1 == x2:
            vsegs.append((x1, min(y1, y2) + 1))
        else:
            hsegs.append((y1, 2 * min(x1, x2), 2 * max(x1, x2)))
    vrays = []
    hrays = []
    for end, prev in ((pts[0], pts[1]), (pts[-1], pts[-2])):
        dx, dy = end[0] - prev[0], end[1] - prev[1]
        if dx == 0:
            vrays.append((end[0], end[1], dy > 0))
        else:
            hrays.append((end[1], 2 * end[0], dx > 0))
    return vsegs, hsegs, vrays, hrays


def bipartition_from_path(
    lattice: Lattice, path: CutPath, check_separation: bool = True
) -> Bipartition:
    """Assign each present qubit to a side of the cut.

    Sides come from ray-crossing parity against the path polyline extended to
    infinity through both boundary endpoints, so the assignment stays well
    defined even when defects leave parts of the cut crossing no bond.
    """
    vsegs, hsegs, vrays, hrays = _polyline(path)
    raw = [_ray_side(c, vsegs, hsegs, vrays, hrays) for c in lattice.coords]
    flip = raw[0]
    sides = tuple(s ^ flip for s in raw)
    n2 = sum(sides)
    n1 = len(sides) - n2
    if n1 == 0 or n2 == 0:
        raise DegenerateCutError(
            f"cut {path.sites[0]}..{path.sites[-1]} leaves one side empty"
        )
    if check_separation:
        crossed = set(path.crossed_bonds)
        for bond in lattice.bonds:
            if bond.id not in crossed and sides[bond.a] != sides[bond.b]:
                raise DegenerateCutError(
                    f"cut {path.sites[0]}..{path.sites[-1]} does not separate "
                    f"its sides: bond {bond.id} still joins them"
                )
    return Bipartition(sides=sides, n1=n1, n2=n2)
