"""Hypercube-local kernel generators for polynomial maps.

Kernel search is bounded-box linear algebra: every coefficient of a
candidate column supported inside the box is an unknown, every
coefficient of the composed map is an equation, and the GF(2) nullspace
gives the candidates.  The basis is then thinned to translation-
inequivalent generators.

Certification on a torus deliberately distinguishes local from global
kernel elements.  Translates of box-local generators can never reach
kernel elements that only close up by wrapping around the torus (those
wrapping classes are exactly the interesting degeneracy of the models
this library targets), so the certificate checks two things instead of
bare span equality: every translate lies in the kernel, and every kernel
element supported in a window too small to wrap is spanned by the
translates.  An undersized search box fails the second check with a
dimension deficit; the wrapping classes are reported, not hidden.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .gf2 import Gf2Matrix
from .pauli import GeneratorMap
from .poly import LaurentPoly
from .torus import instantiate, shape_of


@dataclass
class KernelBasis:
    """Independent box-local generators of the kernel of `parent`."""

    parent: GeneratorMap
    box: tuple[int, ...]
    generators: list[tuple[LaurentPoly, ...]]
    certified_tori: list[tuple[int, ...]] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.parent.dim

    def matrix(self) -> GeneratorMap:
        """Generators as the columns of a map (parent.cols x n_generators)."""
        dim = self.parent.dim
        ncols = self.parent.cols
        if not self.generators:
            return GeneratorMap.zero(dim, ncols, 0)
        rows = []
        for i in range(ncols):
            rows.append(tuple(g[i] for g in self.generators))
        return GeneratorMap(dim, tuple(rows))


def _box_points(box: tuple[int, ...]):
    return list(itertools.product(*(range(b + 1) for b in box)))


def _column_extent(col: tuple[LaurentPoly, ...]) -> tuple[int, ...]:
    dim = col[0].dim
    monos = [t for p in col for t in p.terms]
    if not monos:
        return (0,) * dim
    return tuple(
        max(m[i] for m in monos) - min(m[i] for m in monos) for i in range(dim)
    )


def _box_normalize(col: tuple[LaurentPoly, ...]) -> tuple[LaurentPoly, ...]:
    """Shift a column so the min corner of its combined support sits at 0.

    Unlike the lexicographic column normalization this keeps every exponent
    nonnegative, so normalized candidates stay inside the search box.
    """
    dim = col[0].dim
    monos = [t for p in col for t in p.terms]
    if not monos:
        return col
    shift = tuple(-min(m[i] for m in monos) for i in range(dim))
    return tuple(p.shift(shift) for p in col)


def bounded_kernel(m: GeneratorMap, box: tuple[int, ...] | None = None) -> KernelBasis:
    """Find translation-inequivalent kernel generators supported in a box.

    Args:
        m: the map whose kernel is generated.
        box: per-axis support extent for candidate columns; defaults to the
            support extent of m itself.

    The returned generators each satisfy m o g = 0 as an exact polynomial
    identity and none lies in the GF(2) span of box translates of the
    others.
    """
    if box is None:
        box = m.support_extent()
    box = tuple(int(b) for b in box)
    if len(box) != m.dim:
        raise ValueError("box dimension does not match map dimension")
    if any(b < 0 for b in box):
        raise ValueError("box extents must be nonnegative")

    points = _box_points(box)
    n_vars = m.cols * len(points)
    var_index = {
        (j, e): j * len(points) + k
        for j in range(m.cols)
        for k, e in enumerate(points)
    }

    # Equations: for each map row, every coefficient of sum_j m[i,j] * p_j
    # over the dilated support region must vanish.
    eq_rows: list[int] = []
    for i in range(m.rows):
        region: set[tuple[int, ...]] = set()
        for j in range(m.cols):
            for t in m.entries[i][j].terms:
                for e in points:
                    region.add(tuple(a + b for a, b in zip(t, e)))
        for u in sorted(region):
            row = 0
            for j in range(m.cols):
                terms = m.entries[i][j].terms
                for k, e in enumerate(points):
                    diff = tuple(a - b for a, b in zip(u, e))
                    if diff in terms:
                        row ^= 1 << var_index[(j, e)]
            if row:
                eq_rows.append(row)

    system = Gf2Matrix(len(eq_rows), n_vars, eq_rows)
    raw = system.nullspace()

    dim = m.dim
    candidates: list[tuple[LaurentPoly, ...]] = []
    seen: set[tuple] = set()
    for v in raw:
        col = []
        for j in range(m.cols):
            terms = [
                points[k]
                for k in range(len(points))
                if (v >> (j * len(points) + k)) & 1
            ]
            col.append(LaurentPoly.from_terms(dim, terms))
        norm = _box_normalize(tuple(col))
        key = tuple(p.terms for p in norm)
        if key not in seen:
            seen.add(key)
            candidates.append(norm)

    def sort_key(col):
        n_terms = sum(len(p.terms) for p in col)
        ext = _column_extent(col)
        volume = 1
        for e in ext:
            volume *= e + 1
        return (n_terms, volume, tuple(p.sorted_terms() for p in col))

    candidates.sort(key=sort_key)

    point_index = {e: k for k, e in enumerate(points)}

    def column_to_vec(col) -> int | None:
        acc = 0
        for j, p in enumerate(col):
            for t in p.terms:
                k = point_index.get(t)
                if k is None:
                    return None
                acc |= 1 << (j * len(points) + k)
        return acc

    kept: list[tuple[LaurentPoly, ...]] = []
    kept_translates: list[int] = []
    for cand in candidates:
        vec = column_to_vec(cand)
        assert vec is not None  # box-normalized candidates stay inside the box
        if kept_translates:
            span = Gf2Matrix(n_vars, len(kept_translates))
            for cidx, tv in enumerate(kept_translates):
                for b in range(n_vars):
                    if (tv >> b) & 1:
                        span.data[b] |= 1 << cidx
            if span.solve(vec) is not None:
                continue
        kept.append(cand)
        ext = _column_extent(cand)
        shifts = itertools.product(*(range(b - e + 1) for b, e in zip(box, ext)))
        for sh in shifts:
            tv = column_to_vec(tuple(p.shift(sh) for p in cand))
            if tv is not None:
                kept_translates.append(tv)

    basis = KernelBasis(parent=m, box=box, generators=kept)
    for g in basis.generators:
        composed = m.compose(GeneratorMap(dim, tuple((p,) for p in g)))
        if not composed.is_zero():
            raise AssertionError("kernel generator fails the exact identity")
    return basis


@dataclass(frozen=True)
class CertifyReport:
    lengths: tuple[int, ...]
    kernel_dim: int
    span_dim: int
    containment: bool
    window: tuple[int, ...]
    local_kernel_dim: int
    local_spanned: bool
    missing_local: int
    passed: bool

    @property
    def wrapping_deficit(self) -> int:
        """Kernel dimension unreachable by translates; wrapping classes on a torus."""
        return self.kernel_dim - self.span_dim

    def __str__(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (
            f"certify on {self.lengths}: {status} "
            f"(kernel {self.kernel_dim}, translate span {self.span_dim}, "
            f"window-local kernel {self.local_kernel_dim}, "
            f"unspanned local {self.missing_local}, "
            f"wrapping classes {self.wrapping_deficit})"
        )


def certify_on_torus(kb: KernelBasis, lengths) -> CertifyReport:
    """Certify a kernel basis against the full kernel on a finite torus.

    Passes when all generator translates lie in the kernel and every kernel
    element supported in a non-wrapping window is in their span.  Kernel
    elements that wrap the torus are reported via `wrapping_deficit`.
    """
    lengths = tuple(int(l) for l in lengths)
    if len(lengths) != kb.dim:
        raise ValueError("torus dimension mismatch")
    if any(l <= 2 * b for l, b in zip(lengths, kb.box)):
        raise ValueError("torus lengths must exceed twice the box extent")
    shape = shape_of(lengths)
    n = shape.n_sites
    parent_t = instantiate(kb.parent, shape)
    kernel_dim = parent_t.cols - parent_t.rank()

    gen_map = kb.matrix()
    if gen_map.cols:
        translates = instantiate(gen_map, shape)
        # columns of `translates` are all torus translates of all generators
        span_rows = translates.transpose()
        span_dim = span_rows.rank()
        containment = all(
            parent_t.mul_vec(v) == 0 for v in span_rows.data
        )
        solver = translates
    else:
        span_dim = 0
        containment = True
        solver = Gf2Matrix(parent_t.cols, 0)

    pext = kb.parent.support_extent()
    window = tuple(max(l - 1 - e, 0) for l, e in zip(lengths, pext))
    # restrict to kernel elements supported on window sites (per column type)
    allowed = set()
    for j in range(kb.parent.cols):
        for coords in itertools.product(*(range(w + 1) for w in window)):
            allowed.add(j * n + shape.site_index(coords))
    selectors = [
        1 << b for b in range(parent_t.cols) if b not in allowed
    ]
    stacked = parent_t.stack(Gf2Matrix(len(selectors), parent_t.cols, selectors))
    local_kernel = stacked.nullspace()
    missing = 0
    for v in local_kernel:
        if solver.cols == 0:
            if v:
                missing += 1
            continue
        if solver.solve(v) is None:
            missing += 1
    local_spanned = missing == 0
    passed = containment and local_spanned
    if passed and lengths not in kb.certified_tori:
        kb.certified_tori.append(lengths)
    return CertifyReport(
        lengths=lengths,
        kernel_dim=kernel_dim,
        span_dim=span_dim,
        containment=containment,
        window=window,
        local_kernel_dim=len(local_kernel),
        local_spanned=local_spanned,
        missing_local=missing,
        passed=passed,
    )
