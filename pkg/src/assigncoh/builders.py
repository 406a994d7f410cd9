"""Constructors for standard stratified spaces.

Each builder enumerates the orbit-type cells of a concrete torus action,
attaches infinitesimal stabilizers, merges comparable cells whose
stabilizers agree (one stratum per connected group of such cells), and
returns the resulting poset with its moment coefficient system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coeffsys import CoefficientSystem, moment_system
from .errors import MalformedPolytopeError, UnknownIdError
from .errors import DescriptionError
from .ratlin import RatMatrix, rank
from .stratposet import StratSpace, Subalgebra, _int_kernel


@dataclass(frozen=True)
class WeightMatrix:
    """Integer weight covectors of a torus action, one row per coordinate."""

    torus_dim: int
    rows: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], torus_dim: Optional[int] = None):
        rs = tuple(tuple(int(x) for x in r) for r in rows)
        if not rs:
            raise ValueError("need at least one weight row")
        n = torus_dim if torus_dim is not None else len(rs[0])
        for r in rs:
            if len(r) != n:
                raise ValueError(f"weight row {r} has length {len(r)}, expected {n}")
        return cls(n, rs)

    @property
    def count(self) -> int:
        return len(self.rows)


def _kernel_subalgebra(n: int, rows: List[Sequence[int]]) -> Subalgebra:
    """Common kernel of integer covectors, as a canonical subalgebra."""
    basis = _int_kernel([list(map(int, r)) for r in rows], n)
    if not basis:
        return Subalgebra.zero(n)
    return Subalgebra.span(n, basis)


class _CellMerge:
    """Union-find merge of labelled cells into strata.

    Cells come with a partial order and stabilizers; comparable cells with
    equal stabilizers collapse into one stratum, whose id is the smallest
    cell name in the group.
    """

    def __init__(self, cells: Mapping[str, Subalgebra]):
        self.cells = dict(cells)
        self.parent = {c: c for c in cells}
        self.pairs: List[Tuple[str, str]] = []   # strictly comparable cell pairs

    def find(self, c: str) -> str:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def relate(self, lo: str, hi: str):
        self.pairs.append((lo, hi))
        if self.cells[lo] == self.cells[hi]:
            a, b = self.find(lo), self.find(hi)
            if a != b:
                self.parent[max(a, b)] = min(a, b)

    def build(self, torus_dim: int) -> StratSpace:
        groups: Dict[str, List[str]] = {}
        for c in self.cells:
            groups.setdefault(self.find(c), []).append(c)
        name = {root: min(members) for root, members in groups.items()}
        strata = {name[root]: self.cells[root] for root in groups}
        rel = set()
        for lo, hi in self.pairs:
            a, b = name[self.find(lo)], name[self.find(hi)]
            if a != b:
                rel.add((a, b))
        # transitive closure, then reduction to cover edges
        ids = sorted(strata)
        below: Dict[str, set] = {x: {y for (a, y) in rel if a == x} for x in ids}
        changed = True
        while changed:
            changed = False
            for x in ids:
                grown = set(below[x])
                for y in below[x]:
                    grown |= below[y]
                if grown != below[x]:
                    below[x] = grown
                    changed = True
        covers = []
        for x in ids:
            for y in sorted(below[x]):
                if not any(y in below[z] for z in below[x] if z != y):
                    covers.append((x, y))
        return StratSpace.from_covers(torus_dim, strata, covers)


def build_linear_rep(weights: WeightMatrix) -> Tuple[StratSpace, CoefficientSystem]:
    """Linear torus action on complex coordinates with the given weights.

    Cells are indexed by the set of nonzero coordinates; the stabilizer is
    the common kernel of the active weights, and a cell degenerates into
    another by switching coordinates off.
    """
    if not isinstance(weights, WeightMatrix):
        weights = WeightMatrix.from_rows(weights)
    n, d = weights.torus_dim, weights.count

    def cell_name(subset: Tuple[int, ...]) -> str:
        return "c" + "".join(f"_{i + 1}" for i in subset)

    cells = {}
    for r in range(d + 1):
        for subset in itertools.combinations(range(d), r):
            cells[cell_name(subset)] = _kernel_subalgebra(
                n, [weights.rows[i] for i in subset]
            )
    merge = _CellMerge(cells)
    for r in range(d):
        for subset in itertools.combinations(range(d), r):
            lo = cell_name(subset)
            for j in range(d):
                if j not in subset:
                    hi = cell_name(tuple(sorted(subset + (j,))))
                    merge.relate(lo, hi)
    space = merge.build(n)
    return space, moment_system(space)


def build_sphere_product(
    n: int, lambdas: Iterable[Sequence[int]]
) -> Tuple[StratSpace, CoefficientSystem]:
    """Product of two-spheres, the j-th rotated with weight lambda_j.

    Each factor contributes the cells N, S (poles) and O (the open strip
    between them); the stabilizer of a product cell is the common kernel
    of the weights at its O positions.
    """
    lam = [tuple(int(x) for x in row) for row in lambdas]
    if not lam:
        raise ValueError("need at least one sphere factor")
    for row in lam:
        if len(row) != n:
            raise ValueError(f"weight row {row} has length {len(row)}, expected {n}")
    d = len(lam)
    cells = {}
    for labels in itertools.product("NOS", repeat=d):
        rows = [lam[j] for j in range(d) if labels[j] == "O"]
        cells["".join(labels)] = _kernel_subalgebra(n, rows)
    merge = _CellMerge(cells)
    for labels in itertools.product("NOS", repeat=d):
        lo = "".join(labels)
        for j in range(d):
            if labels[j] != "O":
                hi = "".join(labels[:j] + ("O",) + labels[j + 1:])
                merge.relate(lo, hi)
    space = merge.build(n)
    return space, moment_system(space)


@dataclass(frozen=True)
class PolytopeData:
    """Simple polytope described by facet normals and vertex-facet incidence."""

    dim: int
    facets: Tuple[Tuple[str, Tuple[int, ...]], ...]   # (facet id, inward normal)
    vertices: Tuple[Tuple[str, Tuple[str, ...]], ...]  # (vertex id, facet ids)

    @classmethod
    def make(cls, dim, facets, vertices) -> "PolytopeData":
        fs = tuple((str(fid), tuple(int(x) for x in nrm)) for fid, nrm in facets)
        vs = tuple((str(vid), tuple(str(f) for f in fids)) for vid, fids in vertices)
        return cls(dim, fs, vs)


def build_polytope(data: PolytopeData) -> Tuple[StratSpace, CoefficientSystem]:
    """Face poset of a simple polytope as a toric stratification.

    Faces are cut out by subsets of the facets through a vertex; the
    stabilizer of a face is spanned by the normals of the facets containing
    it.  Simplicity is enforced at the vertices: exactly dim facets with
    linearly independent normals each.
    """
    n = data.dim
    normals = {}
    for fid, nrm in data.facets:
        if fid in normals:
            raise MalformedPolytopeError(f"duplicate facet id {fid!r}")
        if len(nrm) != n:
            raise MalformedPolytopeError(f"facet {fid!r}: normal has wrong length")
        normals[fid] = nrm
    vfacets: Dict[str, frozenset] = {}
    for vid, fids in data.vertices:
        if vid in vfacets or vid in normals:
            raise MalformedPolytopeError(f"duplicate id {vid!r}")
        for f in fids:
            if f not in normals:
                raise MalformedPolytopeError(f"vertex {vid!r} uses unknown facet {f!r}")
        if len(set(fids)) != n:
            raise MalformedPolytopeError(
                f"vertex {vid!r} lies on {len(set(fids))} facets, expected {n}"
            )
        if rank(RatMatrix.from_rows([normals[f] for f in fids])) != n:
            raise MalformedPolytopeError(
                f"vertex {vid!r}: facet normals are linearly dependent"
            )
        vfacets[vid] = frozenset(fids)
    if not vfacets:
        raise MalformedPolytopeError("polytope needs at least one vertex")
    seen = {}
    for vid, fs in vfacets.items():
        if fs in seen:
            raise MalformedPolytopeError(
                f"vertices {seen[fs]!r} and {vid!r} lie on the same facets"
            )
        seen[fs] = vid

    # every face is the set of vertices sharing a facet subset taken at a vertex
    faces: Dict[frozenset, frozenset] = {}   # vertex set -> facet set of the face
    for vid, fs in vfacets.items():
        for r in range(n + 1):
            for sub in itertools.combinations(sorted(fs), r):
                vs = frozenset(w for w, wf in vfacets.items() if wf.issuperset(sub))
                common = frozenset.intersection(*(vfacets[w] for w in vs))
                faces[vs] = common

    vertex_by_facets = {fs: vid for vid, fs in vfacets.items()}

    def face_id(vs: frozenset, fs: frozenset) -> str:
        if len(vs) == 1:
            return next(iter(vs))
        if not fs:
            return "interior"
        return "|".join(sorted(fs))

    strata = {}
    members = {}
    for vs, fs in faces.items():
        fid = face_id(vs, fs)
        if fid in strata:
            raise MalformedPolytopeError(f"face id collision at {fid!r}")
        strata[fid] = Subalgebra.span(n, [normals[f] for f in fs])
        members[fid] = vs
    order = []
    for a in strata:
        for b in strata:
            if a != b and members[a] < members[b]:
                order.append((a, b))
    covers = [
        (a, b)
        for a, b in order
        if not any(members[a] < members[c] < members[b] for c in strata)
    ]
    space = StratSpace.from_covers(n, strata, covers)
    return space, moment_system(space)


def preset_polytope(name: str) -> PolytopeData:
    """Named standard polytopes used by the command line interface."""
    if name == "segment":
        return PolytopeData.make(
            1,
            [("left", (1,)), ("right", (-1,))],
            [("v0", ("left",)), ("v1", ("right",))],
        )
    if name == "triangle":
        return PolytopeData.make(
            2,
            [("a", (1, 0)), ("b", (0, 1)), ("c", (-1, -1))],
            [("v0", ("a", "b")), ("v1", ("b", "c")), ("v2", ("a", "c"))],
        )
    if name == "square":
        return PolytopeData.make(
            2,
            [("left", (1, 0)), ("bottom", (0, 1)), ("right", (-1, 0)), ("top", (0, -1))],
            [
                ("v00", ("left", "bottom")),
                ("v01", ("left", "top")),
                ("v10", ("right", "bottom")),
                ("v11", ("right", "top")),
            ],
        )
    if name == "pentagon":
        # square with one corner cut by the facet x + y <= const
        return PolytopeData.make(
            2,
            [
                ("left", (1, 0)),
                ("bottom", (0, 1)),
                ("right", (-1, 0)),
                ("top", (0, -1)),
                ("cut", (-1, -1)),
            ],
            [
                ("v00", ("left", "bottom")),
                ("v01", ("left", "top")),
                ("v10", ("right", "bottom")),
                ("vt", ("top", "cut")),
                ("vr", ("right", "cut")),
            ],
        )
    if name == "cube":
        facets = [
            ("x0", (1, 0, 0)),
            ("x1", (-1, 0, 0)),
            ("y0", (0, 1, 0)),
            ("y1", (0, -1, 0)),
            ("z0", (0, 0, 1)),
            ("z1", (0, 0, -1)),
        ]
        vertices = []
        for i, j, k in itertools.product((0, 1), repeat=3):
            vertices.append((f"v{i}{j}{k}", (f"x{i}", f"y{j}", f"z{k}")))
        return PolytopeData.make(3, facets, vertices)
    raise ValueError(f"unknown polytope preset {name!r}")


def build_product(
    s1: Tuple[StratSpace, CoefficientSystem],
    s2: Tuple[StratSpace, CoefficientSystem],
) -> Tuple[StratSpace, CoefficientSystem]:
    """Product action: strata are pairs, stabilizers are direct sums.

    Both inputs must carry their moment systems; the result carries the
    moment system of the product, whose blocks restrict to the factors.
    """
    space1, space2 = s1[0], s2[0]
    n1, n2 = space1.torus_dim, space2.torus_dim
    strata = {}
    for a in space1.ids:
        ra = space1.stabilizer(a).basis_rows
        for b in space2.ids:
            rb = space2.stabilizer(b).basis_rows
            rows = [list(r) + [0] * n2 for r in ra] + [[0] * n1 + list(r) for r in rb]
            name = f"{a}*{b}"
            if name in strata:
                raise ValueError(f"product id collision at {name!r}")
            strata[name] = Subalgebra.span(n1 + n2, rows) if rows else Subalgebra.zero(n1 + n2)
    covers = []
    for a, b in space1.covers:
        for c in space2.ids:
            covers.append((f"{a}*{c}", f"{b}*{c}"))
    for c, d in space2.covers:
        for a in space1.ids:
            covers.append((f"{a}*{c}", f"{a}*{d}"))
    space = StratSpace.from_covers(n1 + n2, strata, covers)
    return space, moment_system(space)


# ---------------------------------------------------------------------------
# serializable description

@dataclass
class SpaceDescription:
    """JSON-facing description of a space, with an optional explicit system.

    Stabilizer generators need not be canonical; they are canonicalized on
    construction.  When `dims`/`projections` are present they define a
    generic coefficient system (projections at least on all cover pairs,
    other comparable pairs filled in by composition); otherwise the moment
    system is used.
    """

    torus_dim: int
    strata: List[Tuple[str, List[List[int]]]]
    covers: List[Tuple[str, str]]
    dims: Optional[Dict[str, int]] = None
    projections: Optional[List[Tuple[str, str, List[List[Fraction]]]]] = None

    @classmethod
    def from_json_dict(cls, obj) -> "SpaceDescription":
        if not isinstance(obj, dict):
            raise DescriptionError("top level must be an object")
        try:
            torus_dim = int(obj["torus_dim"])
            strata_raw = obj["strata"]
            covers_raw = obj.get("covers", [])
        except (KeyError, TypeError, ValueError) as e:
            raise DescriptionError(f"missing or malformed field: {e}") from None
        if not isinstance(strata_raw, list) or not isinstance(covers_raw, list):
            raise DescriptionError("strata and covers must be arrays")
        strata = []
        for s in strata_raw:
            try:
                sid = str(s["id"])
                basis = [[int(x) for x in row] for row in s.get("stabilizer", [])]
            except (KeyError, TypeError, ValueError):
                raise DescriptionError(f"malformed stratum entry: {s!r}") from None
            strata.append((sid, basis))
        covers = []
        for c in covers_raw:
            if not isinstance(c, (list, tuple)) or len(c) != 2:
                raise DescriptionError(f"malformed cover entry: {c!r}")
            covers.append((str(c[0]), str(c[1])))
        dims = None
        if "dims" in obj:
            try:
                dims = {str(k): int(v) for k, v in obj["dims"].items()}
            except (AttributeError, TypeError, ValueError):
                raise DescriptionError("malformed dims table") from None
        projections = None
        if "projections" in obj:
            projections = []
            if not isinstance(obj["projections"], list):
                raise DescriptionError("projections must be an array")
            for p in obj["projections"]:
                try:
                    x, y = str(p["pair"][0]), str(p["pair"][1])
                    mat = [[Fraction(str(e)) for e in row] for row in p["matrix"]]
                except (KeyError, IndexError, TypeError, ValueError, ZeroDivisionError):
                    raise DescriptionError(f"malformed projection entry: {p!r}") from None
                projections.append((x, y, mat))
        return cls(torus_dim, strata, covers, dims, projections)

    def to_json_dict(self) -> dict:
        out = {
            "torus_dim": self.torus_dim,
            "strata": [
                {"id": sid, "stabilizer": [list(r) for r in rows]}
                for sid, rows in self.strata
            ],
            "covers": [list(c) for c in self.covers],
        }
        if self.dims is not None:
            out["dims"] = dict(sorted(self.dims.items()))
        if self.projections is not None:
            out["projections"] = [
                {"pair": [x, y], "matrix": [[str(e) for e in row] for row in mat]}
                for x, y, mat in self.projections
            ]
        return out

    @classmethod
    def from_space(cls, space: StratSpace) -> "SpaceDescription":
        return cls(
            torus_dim=space.torus_dim,
            strata=[
                (x, [list(r) for r in space.stabilizer(x).basis_rows])
                for x in space.ids
            ],
            covers=[list(c) for c in space.covers],
        )


def build_from_description(desc: SpaceDescription) -> Tuple[StratSpace, CoefficientSystem]:
    """Space and system from a description; moment system unless dims given."""
    seen = set()
    strata = {}
    for sid, basis in desc.strata:
        if sid in seen:
            raise DescriptionError(f"duplicate stratum id {sid!r}")
        seen.add(sid)
        strata[sid] = Subalgebra.span(desc.torus_dim, basis)
    space = StratSpace.from_covers(desc.torus_dim, strata, desc.covers)
    if desc.dims is None:
        return space, moment_system(space)
    for x in space.ids:
        if x not in desc.dims:
            raise DescriptionError(f"dims table misses stratum {x!r}")
    cover_maps = {}
    explicit = {}
    for x, y, mat in desc.projections or []:
        if x not in strata or y not in strata:
            raise UnknownIdError(x if x not in strata else y)
        m = RatMatrix.from_rows(mat) if mat else RatMatrix.zeros(desc.dims[y], desc.dims[x])
        if (x, y) in space.covers:
            cover_maps[(x, y)] = m
        else:
            explicit[(x, y)] = m
    system = CoefficientSystem.from_cover_maps(space, desc.dims, cover_maps, explicit)
    return space, system
