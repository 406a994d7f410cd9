"""Cochain complexes on ordered stratum tuples and their cohomology.

A degree-k cochain assigns to each weakly increasing (k+1)-tuple of strata
a value in the coefficient space of the tuple's top stratum.  The
differential alternates over dropped entries; dropping the top entry costs
a projection:

    (d phi)(X0,...,X_{k+1}) =
        sum_{l=0}^{k} (-1)^l phi(...,X_{l-1},X_{l+1},...)
        + (-1)^{k+1} proj(X_k,X_{k+1}) phi(X0,...,X_k)

The reduced complex keeps only strictly increasing tuples; it computes the
same cohomology, which the homotopy operators in this module certify
degree by degree.  Relative complexes (cochains vanishing on tuples inside
a chosen stratum subset) reuse the same assembly with a tuple filter.

Kernel/image bookkeeping is canonical: representatives come from reduced
row echelon forms, so equal inputs give byte-equal outputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .coeffsys import CoefficientSystem, SystemMorphism, ses_check, moment_system
from .errors import (
    InvalidMorphismError,
    NotExactError,
    NotUnionOfStrataError,
    NoUniqueMinimumError,
)
from .ratlin import RatMatrix, kernel_basis, rank, rref, solve
from .stratposet import PosetMap, StratSpace, chains, minimal_strata, poset_morphism_check

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ChainBasis:
    """Ordered tuples of one degree with coordinate offsets for their blocks.

    Tuples whose top stratum has dimension zero stay in the list (they are
    legitimate chains) but contribute no coordinates.
    """

    def __init__(self, system: CoefficientSystem, degree: int, strict: bool,
                 tuples: Sequence[Tuple[str, ...]]):
        self.system = system
        self.degree = degree
        self.strict = strict
        self.tuples = tuple(tuples)
        offsets = []
        dims = []
        pos = 0
        for t in self.tuples:
            offsets.append(pos)
            d = system.dims[t[-1]]
            dims.append(d)
            pos += d
        self.offsets = tuple(offsets)
        self.block_dims = tuple(dims)
        self.total_dim = pos
        self.index = {t: i for i, t in enumerate(self.tuples)}

    def block(self, t: Tuple[str, ...]) -> Optional[Tuple[int, int]]:
        """(offset, width) of a tuple's coordinate block, or None."""
        i = self.index.get(t)
        if i is None:
            return None
        return (self.offsets[i], self.block_dims[i])

    def coordinate_labels(self) -> List[Tuple[Tuple[str, ...], int]]:
        out = []
        for t, w in zip(self.tuples, self.block_dims):
            for j in range(w):
                out.append((t, j))
        return out


class Cochain:
    """A vector in one chain space, addressable by tuple."""

    def __init__(self, basis: ChainBasis, coords: Sequence):
        if len(coords) != basis.total_dim:
            raise ValueError(
                f"coordinate length {len(coords)} != chain dimension {basis.total_dim}"
            )
        self.basis = basis
        self.coords = tuple(Fraction(c) for c in coords)

    def value_on(self, t: Tuple[str, ...]) -> List[Fraction]:
        if len(t) != self.basis.degree + 1:
            raise ValueError(f"tuple length {len(t)} != degree+1")
        blk = self.basis.block(tuple(t))
        if blk is None:
            return [_ZERO] * self.basis.system.dims[t[-1]]
        off, w = blk
        return list(self.coords[off:off + w])

    def as_dict(self) -> Dict[Tuple[str, ...], List[Fraction]]:
        out = {}
        for t, off, w in zip(self.basis.tuples, self.basis.offsets, self.basis.block_dims):
            vals = list(self.coords[off:off + w])
            if any(vals):
                out[t] = vals
        return out

    def __repr__(self):
        return f"Cochain(degree={self.basis.degree}, {self.as_dict()})"


def _filtered_tuples(space: StratSpace, k: int, strict: bool, support) -> List[Tuple[str, ...]]:
    ts = chains(space, k, strict)
    if support is None:
        return ts
    kind, nset = support
    if kind == "rel":
        return [t for t in ts if any(x not in nset for x in t)]
    if kind == "sub":
        return [t for t in ts if all(x in nset for x in t)]
    raise ValueError(f"unknown support kind {kind!r}")


def chain_basis(v: CoefficientSystem, k: int, strict: bool = True, support=None) -> ChainBasis:
    return ChainBasis(v, k, strict, _filtered_tuples(v.space, k, strict, support))


def chain_space_dim(v: CoefficientSystem, k: int, strict: bool = True) -> int:
    return chain_basis(v, k, strict).total_dim


def _differential(v: CoefficientSystem, src: ChainBasis, dst: ChainBasis) -> RatMatrix:
    rows = [[_ZERO] * src.total_dim for _ in range(dst.total_dim)]
    for ti, t in enumerate(dst.tuples):
        top_dim = dst.block_dims[ti]
        if top_dim == 0:
            continue
        r0 = dst.offsets[ti]
        # faces keeping the top stratum: identity blocks with alternating sign
        for ell in range(len(t) - 1):
            face = t[:ell] + t[ell + 1:]
            blk = src.block(face)
            if blk is None:
                continue
            c0, _ = blk
            s = _ONE if ell % 2 == 0 else -_ONE
            for j in range(top_dim):
                rows[r0 + j][c0 + j] += s
        # dropping the top stratum projects the value
        face = t[:-1]
        blk = src.block(face)
        if blk is not None:
            c0, w = blk
            s = _ONE if (len(t) - 1) % 2 == 0 else -_ONE
            pm = v.proj(t[-2], t[-1])
            for j in range(top_dim):
                prow = pm.data[j]
                row = rows[r0 + j]
                for i in range(w):
                    if prow[i]:
                        row[c0 + i] += s * prow[i]
    return RatMatrix(dst.total_dim, src.total_dim, rows)


def differential_matrix(v: CoefficientSystem, k: int, strict: bool = True) -> RatMatrix:
    """Matrix of d from degree k to degree k+1 in the chosen complex."""
    return _differential(v, chain_basis(v, k, strict), chain_basis(v, k + 1, strict))


class _CohomologyData:
    """Kernel, image, and canonical representatives at one degree."""

    def __init__(self, d_in: Optional[RatMatrix], d_out: RatMatrix):
        self.dim_chain = d_out.cols
        self.cocycles = kernel_basis(d_out)
        if d_in is not None and d_in.cols > 0 and d_in.rows > 0:
            red, rk, piv = rref(d_in.transpose())
            self.im_rows = [red.data[i] for i in range(rk)]
            self.im_pivots = piv
        else:
            self.im_rows = []
            self.im_pivots = ()
        reduced = [self._reduce(z) for z in self.cocycles]
        red, rk, piv = rref(RatMatrix.from_rows(reduced)) if reduced else rref(
            RatMatrix.zeros(0, self.dim_chain)
        )
        self.reps = [red.data[i] for i in range(rk)]
        self.rep_pivots = piv[:rk]
        self.dim = rk

    def _reduce(self, vec: Sequence) -> List[Fraction]:
        out = [Fraction(x) for x in vec]
        for row, p in zip(self.im_rows, self.im_pivots):
            c = out[p]
            if c:
                for j in range(len(out)):
                    if row[j]:
                        out[j] -= c * row[j]
        return out

    def class_coords(self, vec: Sequence) -> List[Fraction]:
        """Coordinates of a cocycle's class over the canonical representatives."""
        red = self._reduce(vec)
        coords = [red[p] for p in self.rep_pivots]
        # the residual must vanish, otherwise vec was not a cocycle
        for c, rep in zip(coords, self.reps):
            if c:
                red = [a - c * b for a, b in zip(red, rep)]
        if any(red):
            raise ValueError("vector does not represent a cohomology class here")
        return coords


@dataclass
class CohomologyResult:
    degree: int
    dim: int
    representatives: List[Cochain]
    diagnostics: Dict[str, int]


class _Complex:
    """Lazy basis/differential/cohomology cache for one filtered complex."""

    def __init__(self, v: CoefficientSystem, strict: bool = True, support=None):
        self.v = v
        self.strict = strict
        self.support = support
        self._bases: Dict[int, ChainBasis] = {}
        self._ds: Dict[int, RatMatrix] = {}
        self._data: Dict[int, _CohomologyData] = {}

    def basis(self, k: int) -> ChainBasis:
        if k not in self._bases:
            self._bases[k] = chain_basis(self.v, k, self.strict, self.support)
        return self._bases[k]

    def d(self, k: int) -> RatMatrix:
        if k not in self._ds:
            self._ds[k] = _differential(self.v, self.basis(k), self.basis(k + 1))
        return self._ds[k]

    def data(self, k: int) -> _CohomologyData:
        if k not in self._data:
            d_in = self.d(k - 1) if k > 0 else None
            self._data[k] = _CohomologyData(d_in, self.d(k))
        return self._data[k]

    def result(self, k: int) -> CohomologyResult:
        data = self.data(k)
        basis = self.basis(k)
        reps = [Cochain(basis, r) for r in data.reps]
        diag = {
            "dim_chain": data.dim_chain,
            "dim_cocycles": len(data.cocycles),
            "rank_coboundaries": len(data.im_rows),
        }
        return CohomologyResult(k, data.dim, reps, diag)


def cohomology(v: CoefficientSystem, k: int, strict: bool = True) -> CohomologyResult:
    """Cohomology at degree k with canonical echelon representatives."""
    if k < 0:
        raise ValueError("degree must be >= 0")
    return _Complex(v, strict).result(k)


def assignment_space_dim(v: CoefficientSystem) -> int:
    return cohomology(v, 0, strict=True).dim


def euler_characteristic(v: CoefficientSystem) -> int:
    """Alternating sum of reduced chain dimensions (finitely many degrees)."""
    total = 0
    k = 0
    while True:
        basis = chain_basis(v, k, strict=True)
        if not basis.tuples:
            break
        total += basis.total_dim if k % 2 == 0 else -basis.total_dim
        k += 1
    return total


# ---------------------------------------------------------------------------
# homotopy operators on the full complex

def _run_length(t: Tuple[str, ...]) -> List[Tuple[str, int]]:
    out = []
    for x in t:
        if out and out[-1][0] == x:
            out[-1] = (x, out[-1][1] + 1)
        else:
            out.append((x, 1))
    return out


def repeated_block_count(t: Tuple[str, ...]) -> int:
    """Number of run-length blocks of length > 1 in the tuple."""
    return sum(1 for _, m in _run_length(t) if m > 1)


def block_scaling_matrix(v: CoefficientSystem, k: int) -> RatMatrix:
    """Diagonal operator scaling each degree-k tuple by its repeated blocks."""
    basis = chain_basis(v, k, strict=False)
    diag = []
    for t, w in zip(basis.tuples, basis.block_dims):
        c = repeated_block_count(t)
        diag.extend([Fraction(c)] * w)
    return RatMatrix.diagonal(diag)


def homotopy_L(v: CoefficientSystem, k: int) -> RatMatrix:
    """Degree-lowering operator fattening one block at a time, full complex.

    On a tuple with blocks X0^(m0) ... Xl^(ml) the j-th summand repeats Xj
    once more and carries sign (-1)^(m0+...+m_{j-1}).  Together with the
    differential it satisfies dL + Ld = block scaling, which is the exact
    identity the reduction to strict tuples rests on.
    """
    if k < 1:
        raise ValueError("homotopy_L is defined for degree >= 1")
    src = chain_basis(v, k, strict=False)
    dst = chain_basis(v, k - 1, strict=False)
    rows = [[_ZERO] * src.total_dim for _ in range(dst.total_dim)]
    for ti, t in enumerate(dst.tuples):
        w = dst.block_dims[ti]
        if w == 0:
            continue
        r0 = dst.offsets[ti]
        blocks = _run_length(t)
        prefix = 0
        for j, (x, m) in enumerate(blocks):
            fat = []
            for jj, (y, mm) in enumerate(blocks):
                fat.extend([y] * (mm + 1 if jj == j else mm))
            blk = src.block(tuple(fat))
            if blk is not None:
                c0, _ = blk
                s = _ONE if prefix % 2 == 0 else -_ONE
                for i in range(w):
                    rows[r0 + i][c0 + i] += s
            prefix += m
    return RatMatrix(dst.total_dim, src.total_dim, rows)


def homotopy_Q(v: CoefficientSystem, k: int) -> RatMatrix:
    """Contraction prepending the unique minimal stratum, full complex.

    Satisfies dQ + Qd = identity in every degree >= 1, which collapses the
    cohomology of a space with a unique minimal stratum onto that stratum's
    coefficient space.
    """
    if k < 1:
        raise ValueError("homotopy_Q is defined for degree >= 1")
    minima = minimal_strata(v.space)
    if len(minima) != 1:
        raise NoUniqueMinimumError(minima)
    x0 = minima[0]
    src = chain_basis(v, k, strict=False)
    dst = chain_basis(v, k - 1, strict=False)
    rows = [[_ZERO] * src.total_dim for _ in range(dst.total_dim)]
    for ti, t in enumerate(dst.tuples):
        w = dst.block_dims[ti]
        if w == 0:
            continue
        blk = src.block((x0,) + t)
        if blk is None:
            continue
        r0 = dst.offsets[ti]
        c0, _ = blk
        for i in range(w):
            rows[r0 + i][c0 + i] += _ONE
    return RatMatrix(dst.total_dim, src.total_dim, rows)


# ---------------------------------------------------------------------------
# relative complexes and long exact sequences

def _checked_subset(space: StratSpace, n: Iterable[str]) -> frozenset:
    nset = frozenset(n)
    bad = sorted(x for x in nset if x not in space.stabilizers)
    if bad:
        raise NotUnionOfStrataError(bad)
    return nset


def relative_cohomology(
    v: CoefficientSystem, n: Iterable[str], k: int, strict: bool = True
) -> CohomologyResult:
    """Cohomology of cochains vanishing on tuples lying entirely inside n."""
    nset = _checked_subset(v.space, n)
    return _Complex(v, strict, support=("rel", nset)).result(k)


def _embed(vec: Sequence, src: ChainBasis, dst: ChainBasis) -> List[Fraction]:
    out = [_ZERO] * dst.total_dim
    for t, off, w in zip(src.tuples, src.offsets, src.block_dims):
        if w == 0:
            continue
        blk = dst.block(t)
        if blk is None:
            if any(vec[off:off + w]):
                raise ValueError(f"vector has support outside the target basis at {t}")
            continue
        o2, _ = blk
        for i in range(w):
            out[o2 + i] = Fraction(vec[off + i])
    return out


def _restrict(vec: Sequence, src: ChainBasis, dst: ChainBasis) -> List[Fraction]:
    out = [_ZERO] * dst.total_dim
    for t, off, w in zip(dst.tuples, dst.offsets, dst.block_dims):
        blk = src.block(t)
        if blk is None:
            continue
        o1, _ = blk
        for i in range(w):
            out[off + i] = Fraction(vec[o1 + i])
    return out


def _induced_matrix(images: List[List[Fraction]], target_dim: int) -> RatMatrix:
    cols = images
    if not cols:
        return RatMatrix.zeros(target_dim, 0)
    data = [[cols[j][i] for j in range(len(cols))] for i in range(target_dim)]
    return RatMatrix(target_dim, len(cols), data)


@dataclass
class ExactSequenceReport:
    """Dims and map ranks of a three-term-per-degree long sequence."""

    node_names: List[str]
    node_dims: List[int]
    map_ranks: List[int]
    failures: List[str]

    @property
    def ok(self) -> bool:
        return not self.failures

    def dims_by_degree(self) -> List[Tuple[int, ...]]:
        out = []
        for i in range(0, len(self.node_dims), 3):
            out.append(tuple(self.node_dims[i:i + 3]))
        return out


def _exactness_walk(node_names, node_dims, maps) -> ExactSequenceReport:
    """Check ker = im at every node of 0 -> N0 -> N1 -> ... -> 0.

    maps[i] sends node i to node i+1; the virtual maps into node 0 and out
    of the last node are zero.  Exactness at a node is composition zero
    plus the rank count rank(in) + rank(out) = dim.
    """
    failures = []
    ranks = [rank(m) for m in maps]
    for i, name in enumerate(node_names):
        rin = ranks[i - 1] if i > 0 else 0
        rout = ranks[i] if i < len(maps) else 0
        if 0 < i < len(maps):
            if not (maps[i] @ maps[i - 1]).is_zero():
                failures.append(f"composition through {name} is nonzero")
        if rin + rout != node_dims[i]:
            failures.append(
                f"rank mismatch at {name}: in {rin} + out {rout} != dim {node_dims[i]}"
            )
    return ExactSequenceReport(list(node_names), list(node_dims), ranks, failures)


def les_pair_check(
    v: CoefficientSystem, n: Iterable[str], max_degree: Optional[int] = None
) -> ExactSequenceReport:
    """Long exact sequence of the pair: relative, absolute, then subset terms.

    Connecting maps extend a subset cocycle by zero and apply the ambient
    differential.  Degrees run to one past the last nonzero chain space
    (default cap: number of strata), beyond which everything is zero.
    """
    nset = _checked_subset(v.space, n)
    rel = _Complex(v, True, support=("rel", nset))
    full = _Complex(v, True)
    sub = _Complex(v, True, support=("sub", nset))
    if max_degree is None:
        max_degree = len(v.space.ids)
    top = 0
    for k in range(max_degree + 1):
        if full.basis(k).tuples:
            top = k
        else:
            break
    degrees = list(range(min(top + 2, max_degree + 2)))

    names: List[str] = []
    dims: List[int] = []
    maps: List[RatMatrix] = []
    for k in degrees:
        dr, da, ds = rel.data(k), full.data(k), sub.data(k)
        names += [f"H^{k}(pair)", f"H^{k}(space)", f"H^{k}(subset)"]
        dims += [dr.dim, da.dim, ds.dim]
        # inclusion of the vanishing-on-n subcomplex
        maps.append(_induced_matrix(
            [da.class_coords(_embed(r, rel.basis(k), full.basis(k))) for r in dr.reps],
            da.dim,
        ))
        # restriction to tuples inside n
        maps.append(_induced_matrix(
            [ds.class_coords(_restrict(r, full.basis(k), sub.basis(k))) for r in da.reps],
            ds.dim,
        ))
        if k + 1 in degrees:
            nr = rel.data(k + 1)
            images = []
            for r in ds.reps:
                lifted = _embed(r, sub.basis(k), full.basis(k))
                w = full.d(k).apply(lifted)
                wr = _restrict(w, full.basis(k + 1), rel.basis(k + 1))
                back = _embed(wr, rel.basis(k + 1), full.basis(k + 1))
                if back != w:
                    raise AssertionError("differential left the relative subcomplex")
                images.append(nr.class_coords(wr))
            maps.append(_induced_matrix(images, nr.dim))
    return _exactness_walk(names, dims, maps[: 3 * len(degrees) - 1])


def les_coefficients_check(
    f: SystemMorphism, g: SystemMorphism, max_degree: Optional[int] = None
) -> ExactSequenceReport:
    """Long exact sequence induced by a short exact sequence of systems.

    Raises NotExactError unless ses_check passes stratum by stratum.  The
    connecting map lifts through g (any preimage), applies the middle
    differential, and pulls back through f (unique by injectivity).
    """
    report = ses_check(f, g)
    if not report.ok:
        raise NotExactError(f"not a short exact sequence: {report}")
    v1, v2, v3 = f.source, f.target, g.target
    c1, c2, c3 = _Complex(v1, True), _Complex(v2, True), _Complex(v3, True)
    if max_degree is None:
        max_degree = len(v2.space.ids)
    top = 0
    for k in range(max_degree + 1):
        if c2.basis(k).tuples:
            top = k
        else:
            break
    degrees = list(range(min(top + 2, max_degree + 2)))

    def chain_map(h: SystemMorphism, src: ChainBasis, dst: ChainBasis, vec):
        out = [_ZERO] * dst.total_dim
        for t, off, w in zip(src.tuples, src.offsets, src.block_dims):
            if w == 0:
                continue
            o2, w2 = dst.block(t)
            if w2 == 0:
                continue
            block = h.map_at(t[-1])
            seg = vec[off:off + w]
            img = block.apply(seg)
            for i in range(w2):
                out[o2 + i] += img[i]
        return out

    def blockwise_solve(h: SystemMorphism, src: ChainBasis, dst: ChainBasis, vec):
        """One preimage of vec under the chainwise map of h (dst -> src coords)."""
        out = [_ZERO] * src.total_dim
        for t, off, w in zip(src.tuples, src.offsets, src.block_dims):
            if w == 0:
                continue
            o2, w2 = dst.block(t)
            seg = vec[o2:o2 + w2]
            sol = solve(h.map_at(t[-1]), seg)
            if sol is None:
                raise AssertionError(f"no blockwise preimage at {t}")
            for i in range(w):
                out[off + i] = sol[i]
        return out

    names: List[str] = []
    dims: List[int] = []
    maps: List[RatMatrix] = []
    for k in degrees:
        d1, d2, d3 = c1.data(k), c2.data(k), c3.data(k)
        names += [f"H^{k}(sub)", f"H^{k}(total)", f"H^{k}(quotient)"]
        dims += [d1.dim, d2.dim, d3.dim]
        maps.append(_induced_matrix(
            [d2.class_coords(chain_map(f, c1.basis(k), c2.basis(k), r)) for r in d1.reps],
            d2.dim,
        ))
        maps.append(_induced_matrix(
            [d3.class_coords(chain_map(g, c2.basis(k), c3.basis(k), r)) for r in d2.reps],
            d3.dim,
        ))
        if k + 1 in degrees:
            n1 = c1.data(k + 1)
            images = []
            for r in d3.reps:
                lift = blockwise_solve(g, c2.basis(k), c3.basis(k), r)
                w = c2.d(k).apply(lift)
                back = blockwise_solve(f, c1.basis(k + 1), c2.basis(k + 1), w)
                images.append(n1.class_coords(back))
            maps.append(_induced_matrix(images, n1.dim))
    return _exactness_walk(names, dims, maps[: 3 * len(degrees) - 1])


# ---------------------------------------------------------------------------
# functoriality along poset maps

def _bridge_matrices(f: PosetMap, v_target: CoefficientSystem,
                     v_source: CoefficientSystem) -> Dict[str, RatMatrix]:
    """Per-stratum matrices carrying target values to source values.

    In stabilizer coordinates the bridge is restriction of functionals
    along the inclusion stab_source(X) <= stab_target(f(X)); with an
    all-zero target system every bridge is the empty matrix.
    """
    src_space, tgt_space = f.source, f.target
    zero_target = all(d == 0 for d in v_target.dims.values())
    if not zero_target:
        for y in tgt_space.ids:
            if v_target.dims[y] != tgt_space.stabilizer(y).dim:
                raise ValueError(
                    "pullback needs stabilizer coordinates on the target "
                    "(or an all-zero target system)"
                )
        for x in src_space.ids:
            if v_source.dims[x] != src_space.stabilizer(x).dim:
                raise ValueError("pullback needs stabilizer coordinates on the source")
    bridges = {}
    for x in src_space.ids:
        fx = f(x)
        if zero_target:
            bridges[x] = RatMatrix.zeros(v_source.dims[x], 0)
            continue
        tmat = tgt_space.stabilizer(fx).basis_matrix()
        rows = []
        for vrow in src_space.stabilizer(x).basis_rows:
            c = solve(tmat, list(vrow))
            if c is None:
                raise AssertionError(f"stabilizer inclusion fails at {x!r}")
            rows.append(c)
        bridges[x] = (
            RatMatrix.from_rows(rows)
            if rows
            else RatMatrix.zeros(0, v_target.dims[fx])
        )
    return bridges


def pullback_matrix(
    f: PosetMap,
    v_target: CoefficientSystem,
    k: int,
    v_source: Optional[CoefficientSystem] = None,
) -> RatMatrix:
    """Matrix of the pullback on full degree-k cochains."""
    report = poset_morphism_check(dict(f.mapping), f.source, f.target)
    if not report.ok:
        raise InvalidMorphismError(
            f"not a morphism of stratified spaces: {report}"
        )
    if v_source is None:
        v_source = moment_system(f.source)
    bridges = _bridge_matrices(f, v_target, v_source)
    src = chain_basis(v_source, k, strict=False)
    dst = chain_basis(v_target, k, strict=False)
    rows = [[_ZERO] * dst.total_dim for _ in range(src.total_dim)]
    for ti, t in enumerate(src.tuples):
        w = src.block_dims[ti]
        if w == 0:
            continue
        image = tuple(f(x) for x in t)
        blk = dst.block(image)
        if blk is None:
            continue
        c0, w2 = blk
        br = bridges[t[-1]]
        r0 = src.offsets[ti]
        for i in range(w):
            brow = br.data[i]
            for j in range(w2):
                if brow[j]:
                    rows[r0 + i][c0 + j] += brow[j]
    return RatMatrix(src.total_dim, dst.total_dim, rows)


def pullback(
    f: PosetMap,
    v_target: CoefficientSystem,
    phi: Cochain,
    v_source: Optional[CoefficientSystem] = None,
) -> Cochain:
    """Pull a cochain on the target back along f, on the full complex.

    A cochain handed over on the strict basis is read as the full-complex
    cochain vanishing on tuples with repeats.
    """
    if v_source is None:
        v_source = moment_system(f.source)
    k = phi.basis.degree
    full_target = chain_basis(v_target, k, strict=False)
    vec = _embed(phi.coords, phi.basis, full_target)
    mat = pullback_matrix(f, v_target, k, v_source)
    return Cochain(chain_basis(v_source, k, strict=False), mat.apply(vec))
