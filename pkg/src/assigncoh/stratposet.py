"""Stratification posets with torus stabilizer data.

A space here is a finite poset of stratum ids, ordered by "is in the
closure of", together with an integer subalgebra of the torus Lie algebra
attached to each stratum.  Along every cover X < Y the stabilizer of Y
must sit inside the stabilizer of X with strictly smaller dimension.

Subalgebras are stored in a canonical form (Hermite basis of the saturated
lattice spanned by the input vectors) so that equality of subspaces is
equality of tuples and spaces built from different generating sets merge
identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import CycleError, StabilizerMonotonicityError, UnknownIdError
from .ratlin import RatMatrix, solve


# ---------------------------------------------------------------------------
# integer lattice helpers

def _int_kernel(rows: List[List[int]], n: int) -> List[List[int]]:
    """Basis of {x in Z^n : rows @ x = 0}; the result lattice is saturated.

    Column elimination with gcd pivoting against an identity transform: the
    transform columns that end up annihilated by every row span the kernel.
    """
    a = [list(r) for r in rows]
    # transform kept column-major: u[j] is the j-th column
    u = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    acols = [[a[i][j] for i in range(len(a))] for j in range(n)]
    frontier = 0
    for r in range(len(rows)):
        while True:
            live = [j for j in range(frontier, n) if acols[j][r]]
            if not live:
                break
            jmin = min(live, key=lambda j: abs(acols[j][r]))
            acols[frontier], acols[jmin] = acols[jmin], acols[frontier]
            u[frontier], u[jmin] = u[jmin], u[frontier]
            pv = acols[frontier][r]
            done = True
            for j in range(frontier + 1, n):
                cj = acols[j][r]
                if cj:
                    q = cj // pv
                    if q:
                        acols[j] = [x - q * y for x, y in zip(acols[j], acols[frontier])]
                        u[j] = [x - q * y for x, y in zip(u[j], u[frontier])]
                    if acols[j][r]:
                        done = False
            if done:
                frontier += 1
                break
    return [list(u[j]) for j in range(frontier, n)]


def _hermite_rows(rows: List[List[int]]) -> Tuple[Tuple[int, ...], ...]:
    """Unique Hermite-normal-form basis (as rows) of the lattice the rows span."""
    h = [list(r) for r in rows]
    m = len(h)
    if m == 0:
        return ()
    n = len(h[0])
    r = 0
    for c in range(n):
        while True:
            live = [i for i in range(r, m) if h[i][c]]
            if not live:
                break
            imin = min(live, key=lambda i: abs(h[i][c]))
            h[r], h[imin] = h[imin], h[r]
            pv = h[r][c]
            done = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // pv
                    if q:
                        h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    if h[i][c]:
                        done = False
            if done:
                break
        if r < m and h[r][c]:
            if h[r][c] < 0:
                h[r] = [-x for x in h[r]]
            for i in range(r):
                q = h[i][c] // h[r][c]
                if q:
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
            r += 1
            if r == m:
                break
    return tuple(tuple(row) for row in h[:r])


class Subalgebra:
    """Rational subspace of the torus Lie algebra, canonically presented.

    The stored basis is the Hermite basis of the saturation of the span of
    the input vectors, so two Subalgebra objects are equal exactly when
    they describe the same rational subspace.
    """

    __slots__ = ("ambient_dim", "basis_rows")

    def __init__(self, ambient_dim: int, basis_rows: Tuple[Tuple[int, ...], ...]):
        self.ambient_dim = ambient_dim
        self.basis_rows = basis_rows

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[int]]) -> "Subalgebra":
        rows = []
        for v in vectors:
            v = [int(x) for x in v]
            if len(v) != ambient_dim:
                raise ValueError(
                    f"vector length {len(v)} != ambient dimension {ambient_dim}"
                )
            if any(v):
                rows.append(v)
        if not rows:
            return cls(ambient_dim, ())
        perp = _int_kernel(rows, ambient_dim)
        if not perp:
            sat = [[1 if i == j else 0 for j in range(ambient_dim)] for i in range(ambient_dim)]
        else:
            sat = _int_kernel(perp, ambient_dim)
        return cls(ambient_dim, _hermite_rows(sat))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subalgebra":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subalgebra":
        return cls.span(ambient_dim, [[1 if i == j else 0 for j in range(ambient_dim)] for i in range(ambient_dim)])

    @property
    def dim(self) -> int:
        return len(self.basis_rows)

    def basis_matrix(self) -> RatMatrix:
        """Basis vectors as columns: ambient_dim x dim."""
        return RatMatrix.from_rows(self.basis_rows).transpose() if self.basis_rows else RatMatrix.zeros(self.ambient_dim, 0)

    def contains(self, other: "Subalgebra") -> bool:
        if self.ambient_dim != other.ambient_dim:
            return False
        if other.dim > self.dim:
            return False
        mat = self.basis_matrix()
        for v in other.basis_rows:
            if solve(mat, list(v)) is None:
                return False
        return True

    def contains_vector(self, v: Sequence) -> bool:
        """Rational-span membership of a single ambient vector."""
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector length {len(v)} != ambient dim {self.ambient_dim}")
        return solve(self.basis_matrix(), list(v)) is not None

    def __eq__(self, other):
        if not isinstance(other, Subalgebra):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis_rows == other.basis_rows

    def __hash__(self):
        return hash((self.ambient_dim, self.basis_rows))

    def __repr__(self):
        return f"Subalgebra(dim={self.dim}/{self.ambient_dim}, basis={self.basis_rows})"


# ---------------------------------------------------------------------------
# the poset

class StratSpace:
    """Finite stratification poset with a stabilizer subalgebra per stratum."""

    def __init__(self, torus_dim, ids, stabilizers, covers, upsets):
        self.torus_dim = torus_dim
        self.ids = ids                    # sorted tuple of stratum ids
        self.stabilizers = stabilizers    # id -> Subalgebra
        self.covers = covers              # tuple of (lower, upper) edges
        self._upsets = upsets             # id -> frozenset of ids weakly above

    @classmethod
    def from_covers(
        cls,
        torus_dim: int,
        strata: Mapping[str, Subalgebra],
        covers: Iterable[Tuple[str, str]],
    ) -> "StratSpace":
        stabilizers = dict(strata)
        ids = tuple(sorted(stabilizers))
        if not ids:
            raise ValueError("a space needs at least one stratum")
        for x, s in stabilizers.items():
            if s.ambient_dim != torus_dim:
                raise ValueError(
                    f"stratum {x!r}: stabilizer ambient dim {s.ambient_dim} != torus dim {torus_dim}"
                )
        cover_list = []
        for x, y in covers:
            if x not in stabilizers:
                raise UnknownIdError(x)
            if y not in stabilizers:
                raise UnknownIdError(y)
            cover_list.append((x, y))
        cover_list = sorted(set(cover_list))

        # topological order first; leftovers witness a cycle
        succ = {x: [] for x in ids}
        indeg = {x: 0 for x in ids}
        for x, y in cover_list:
            succ[x].append(y)
            indeg[y] += 1
        queue = sorted(x for x in ids if indeg[x] == 0)
        order = []
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in succ[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    queue.append(y)
            queue.sort()
        if len(order) != len(ids):
            raise CycleError(sorted(x for x in ids if indeg[x] > 0))

        for x, y in cover_list:
            sx, sy = stabilizers[x], stabilizers[y]
            if not sx.contains(sy):
                raise StabilizerMonotonicityError(
                    (x, y), "stabilizer of the upper stratum is not inside the lower one"
                )
            if sy.dim >= sx.dim:
                raise StabilizerMonotonicityError(
                    (x, y), "stabilizer dimension does not strictly decrease"
                )

        upsets = {x: {x} for x in ids}
        for x in reversed(order):
            for y in succ[x]:
                upsets[x] |= upsets[y]
        upsets = {x: frozenset(s) for x, s in upsets.items()}
        return cls(torus_dim, ids, stabilizers, tuple(cover_list), upsets)

    def leq(self, x: str, y: str) -> bool:
        """True when x is weakly below y (x in the closure order below y)."""
        if x not in self._upsets:
            raise UnknownIdError(x)
        if y not in self.stabilizers:
            raise UnknownIdError(y)
        return y in self._upsets[x]

    def above(self, x: str) -> Tuple[str, ...]:
        """Ids strictly above x, sorted."""
        return tuple(sorted(self._upsets[x] - {x}))

    def upset(self, x: str) -> frozenset:
        if x not in self._upsets:
            raise UnknownIdError(x)
        return self._upsets[x]

    def stabilizer(self, x: str) -> Subalgebra:
        try:
            return self.stabilizers[x]
        except KeyError:
            raise UnknownIdError(x) from None

    def comparable_pairs(self) -> List[Tuple[str, str]]:
        """All ordered pairs (x, y) with x strictly below y."""
        return [(x, y) for x in self.ids for y in self.above(x)]

    def __repr__(self):
        return f"StratSpace(torus_dim={self.torus_dim}, strata={len(self.ids)}, covers={len(self.covers)})"


def minimal_strata(space: StratSpace) -> Tuple[str, ...]:
    """Sorted ids with nothing strictly below them."""
    not_minimal = set()
    for x in space.ids:
        not_minimal.update(space.above(x))
    return tuple(x for x in space.ids if x not in not_minimal)


def chains(space: StratSpace, k: int, strict: bool) -> List[Tuple[str, ...]]:
    """All (k+1)-tuples X0 <= ... <= Xk, lexicographic in sorted-id order.

    With strict=True consecutive entries must differ; repeats are allowed
    otherwise.  k = 0 gives the singleton tuples either way.
    """
    if k < 0:
        raise ValueError("chain degree must be >= 0")
    out: List[Tuple[str, ...]] = []
    ids = space.ids

    def grow(prefix: List[str]):
        if len(prefix) == k + 1:
            out.append(tuple(prefix))
            return
        if not prefix:
            for x in ids:
                prefix.append(x)
                grow(prefix)
                prefix.pop()
            return
        last = prefix[-1]
        for y in sorted(space.upset(last)):
            if strict and y == last:
                continue
            prefix.append(y)
            grow(prefix)
            prefix.pop()

    grow([])
    return out


@dataclass(frozen=True)
class PosetMap:
    """A map of stratum ids between two spaces over the same torus."""

    source: StratSpace
    target: StratSpace
    mapping: Mapping[str, str]

    def __call__(self, x: str) -> str:
        try:
            return self.mapping[x]
        except KeyError:
            raise UnknownIdError(x) from None


@dataclass(frozen=True)
class MorphismReport:
    monotonicity_violations: Tuple[Tuple[str, str], ...]
    stabilizer_violations: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.monotonicity_violations and not self.stabilizer_violations


def poset_morphism_check(
    f: Mapping[str, str], source: StratSpace, target: StratSpace
) -> MorphismReport:
    """Check order preservation and stabilizer inclusion stratum by stratum.

    f must be total on the source ids and land in the target ids; a partial
    or dangling map raises UnknownIdError rather than being reported.
    """
    for x in source.ids:
        if x not in f:
            raise UnknownIdError(x)
    for x, fx in f.items():
        if x not in source.stabilizers:
            raise UnknownIdError(x)
        if fx not in target.stabilizers:
            raise UnknownIdError(fx)
    mono = []
    for x, y in source.comparable_pairs():
        if not target.leq(f[x], f[y]):
            mono.append((x, y))
    stab = []
    for x in source.ids:
        if not target.stabilizer(f[x]).contains(source.stabilizer(x)):
            stab.append(x)
    return MorphismReport(tuple(mono), tuple(stab))
