"""Cluster models on the bipartite constraint graph, and their gauging."""

from __future__ import annotations

from dataclasses import dataclass

from .gauging import _solve_constraint_preimage
from .gf2 import Gf2Matrix
from .pauli import (
    CodeSpec,
    GeneratorMap,
    PauliColumn,
    normalize_column,
    symplectic_pair,
    verify_stabilizer,
)
from .poly import LaurentPoly
from .syzygy import bounded_kernel
from .torus import TorusShape, instantiate, pauli_vector


@dataclass(frozen=True)
class ClusterSpec:
    """Cluster model on matter (first Q types) and gauge (next T types) sublattices.

    One stabilizer type per qubit type: a matter type carries X on itself
    and Z on its adjacent gauge qubits; a gauge type carries X on itself
    and Z on its adjacent matter qubits.
    """

    dim: int
    matter_q: int
    gauge_q: int
    eta: GeneratorMap
    stabilizers: tuple[PauliColumn, ...]

    @property
    def q_per_site(self) -> int:
        return self.matter_q + self.gauge_q

    def to_code(self, name: str = "cluster") -> CodeSpec:
        q = self.q_per_site
        rows = []
        for i in range(2 * q):
            rows.append(tuple(s.entries()[i] for s in self.stabilizers))
        sigma = GeneratorMap(self.dim, tuple(rows))
        return CodeSpec(
            name=name, dim=self.dim, q_per_site=q, css=False, sigma=sigma
        )


def build_cluster(model) -> ClusterSpec:
    """Build the cluster model of a symmetry model's bipartite constraint graph."""
    dim = model.dim
    qm = model.matter_q
    t = model.n_constraints
    eta = model.constraint_map
    eta_dag = eta.dagger()
    zero = LaurentPoly.zero(dim)
    one = LaurentPoly.one(dim)
    stabs = []
    for q in range(qm):
        x = [one if i == q else zero for i in range(qm)] + [zero] * t
        z = [zero] * qm + [eta_dag.entries[j][q] for j in range(t)]
        stabs.append(PauliColumn(dim, qm + t, tuple(x), tuple(z)))
    for j in range(t):
        x = [zero] * qm + [one if i == j else zero for i in range(t)]
        z = [eta.entries[q][j] for q in range(qm)] + [zero] * t
        stabs.append(PauliColumn(dim, qm + t, tuple(x), tuple(z)))
    spec = ClusterSpec(dim, qm, t, eta, tuple(stabs))
    for a in spec.stabilizers:
        for b in spec.stabilizers:
            if not symplectic_pair(a, b).is_zero():
                raise AssertionError("cluster stabilizers fail to commute")
    return spec


def cz_conjugate(c: ClusterSpec, op: PauliColumn) -> PauliColumn:
    """Conjugate by the CZ layer along the cluster's adjacency.

    Matter X picks up Z on adjacent gauge qubits and gauge X picks up Z on
    adjacent matter qubits; Z factors are untouched.  Applying this to the
    cluster stabilizers strips all Z parts, leaving single-site X types.
    """
    qm, t = c.matter_q, c.gauge_q
    eta, eta_dag = c.eta, c.eta.dagger()
    z_matter = list(op.z_block[:qm])
    z_gauge = list(op.z_block[qm:])
    for j in range(t):
        acc = z_gauge[j]
        for q in range(qm):
            acc = acc + eta_dag.entries[j][q] * op.x_block[q]
        z_gauge[j] = acc
    for q in range(qm):
        acc = z_matter[q]
        for j in range(t):
            acc = acc + eta.entries[q][j] * op.x_block[qm + j]
        z_matter[q] = acc
    return PauliColumn(op.dim, op.q, op.x_block, tuple(z_matter + z_gauge))


@dataclass(frozen=True)
class SymmetryReport:
    shape: TorusShape
    matter_dim: int
    gauge_dim: int
    matter_matches_constraint_cokernel: bool
    gauge_matches_constraint_kernel: bool

    def __str__(self) -> str:
        return (
            f"pure-X symmetries on {self.shape.lengths}: "
            f"matter sublattice {self.matter_dim} "
            f"(matches eta-dagger kernel: {self.matter_matches_constraint_cokernel}), "
            f"gauge sublattice {self.gauge_dim} "
            f"(matches eta kernel: {self.gauge_matches_constraint_kernel})"
        )


def inherited_symmetries(c: ClusterSpec, shape: TorusShape) -> SymmetryReport:
    """Count pure-X operators on each sublattice commuting with all stabilizers.

    Computed directly from the instantiated stabilizers, then matched
    against the torus kernels of the constraint map and its dagger.
    """
    n = shape.n_sites
    code = c.to_code()
    sigma_t = instantiate(code.full_sigma(), shape)
    q = c.q_per_site
    # an X pattern anticommutes with a stabilizer translate exactly when it
    # overlaps its Z part oddly: constraints come from the Z-block rows
    z_rows = [sigma_t.data[r] for r in range(q * n, 2 * q * n)]
    stab_cols = sigma_t.cols

    def sublattice_dim(first_type: int, n_types: int) -> int:
        # unknowns: X pattern supported on the chosen sublattice types
        nvars = n_types * n
        rows = []
        for col in range(stab_cols):
            row = 0
            for ty in range(n_types):
                for s in range(n):
                    coord = (first_type + ty) * n + s
                    if (z_rows[coord] >> col) & 1:
                        row |= 1 << (ty * n + s)
            rows.append(row)
        mat = Gf2Matrix(stab_cols, nvars, rows)
        return nvars - mat.rank()

    matter_dim = sublattice_dim(0, c.matter_q)
    gauge_dim = sublattice_dim(c.matter_q, c.gauge_q)

    eta_t = instantiate(c.eta, shape)
    eta_dag_t = instantiate(c.eta.dagger(), shape)
    ker_eta = eta_t.cols - eta_t.rank()
    ker_eta_dag = eta_dag_t.cols - eta_dag_t.rank()
    return SymmetryReport(
        shape=shape,
        matter_dim=matter_dim,
        gauge_dim=gauge_dim,
        matter_matches_constraint_cokernel=(matter_dim == ker_eta_dag),
        gauge_matches_constraint_kernel=(gauge_dim == ker_eta),
    )


def _substitute_sublattice(
    stabs: list[PauliColumn],
    dim: int,
    n_old: int,
    n_partner: int,
    old_range: tuple[int, int],
    adjacency: GeneratorMap,
) -> list[PauliColumn]:
    """Gauge away one sublattice: X there becomes an X pattern on partner
    qubits (via the dagger of the adjacency), Z patterns become single
    partner Z's (the adjacency columns are the constraints being gauged).

    Qubit layout of the output: the untouched types keep their slots, the
    gauged sublattice's slots are dropped, and n_partner new types are
    appended at the end.
    """
    lo, hi = old_range
    adj_dag = adjacency.dagger()
    zero = LaurentPoly.zero(dim)
    out = []
    for s in stabs:
        keep_x = [p for i, p in enumerate(s.x_block) if not lo <= i < hi]
        keep_z = [p for i, p in enumerate(s.z_block) if not lo <= i < hi]
        gauged_x = list(s.x_block[lo:hi])
        gauged_z = list(s.z_block[lo:hi])
        new_x = []
        for j in range(n_partner):
            acc = zero
            for q in range(hi - lo):
                acc = acc + adj_dag.entries[j][q] * gauged_x[q]
            new_x.append(acc)
        new_z = list(_solve_constraint_preimage(adjacency, tuple(gauged_z)))
        out.append(
            PauliColumn(
                dim,
                len(keep_x) + n_partner,
                tuple(keep_x + new_x),
                tuple(keep_z + new_z),
            )
        )
    return out


@dataclass(frozen=True)
class SublatticeGauging:
    code: CodeSpec
    extra_z_types: tuple[tuple[LaurentPoly, ...], ...]
    flagged: bool


def gauge_sublattice(
    c: ClusterSpec, which: str, box: tuple[int, ...] | None = None
) -> SublatticeGauging:
    """Gauge the matter sublattice, the gauge sublattice, or both.

    Gauging one sublattice doubles the remaining one: each X or Z field
    there acquires a partner Z or X on the new qubits, and the box-local
    kernel fields of the gauged adjacency are added as extra Z types on
    the new qubits.  Gauging both returns the cluster itself up to
    sublattice swap and X<->Z exchange; the extra kernel fields are then
    redundant and reported separately.
    """
    if which not in ("matter", "gauge", "both"):
        raise ValueError("which must be matter, gauge or both")
    dim = c.dim
    qm, t = c.matter_q, c.gauge_q
    stabs = list(c.stabilizers)
    zero = LaurentPoly.zero(dim)

    def kernel_fields(adjacency: GeneratorMap) -> list[tuple[LaurentPoly, ...]]:
        kb = bounded_kernel(adjacency, box)
        return kb.generators

    if which == "matter":
        # constraints on matter are the eta columns (from the gauge stabilizers)
        new_stabs = _substitute_sublattice(stabs, dim, qm + t, t, (0, qm), c.eta)
        extra = kernel_fields(c.eta)
        q_new = t + t
        pad = lambda g: tuple([zero] * t + list(g))
    elif which == "gauge":
        new_stabs = _substitute_sublattice(stabs, dim, qm + t, qm, (qm, qm + t), c.eta.dagger())
        extra = kernel_fields(c.eta.dagger())
        q_new = qm + qm
        pad = lambda g: tuple([zero] * qm + list(g))
    else:
        once = gauge_sublattice(c, "matter", box)
        # the matter gauging left the old gauge types in slots [0, t) and the
        # new partners in [t, 2t); now gauge the old gauge sublattice, whose
        # Z patterns are generated by the dagger adjacency.  Only the main
        # qm + t types go through; the kernel fields are re-added afterwards.
        mid_stabs = once.code.generator_columns()[: qm + t]
        new_stabs = _substitute_sublattice(
            mid_stabs, dim, 2 * t, qm, (0, t), c.eta.dagger()
        )
        extra_matter = kernel_fields(c.eta)
        extra_gauge = kernel_fields(c.eta.dagger())
        q_new = t + qm
        cols = []
        for g in extra_matter:
            cols.append(tuple(list(g) + [zero] * qm))
        for g in extra_gauge:
            cols.append(tuple([zero] * t + list(g)))
        rows = []
        for i in range(2 * q_new):
            row = []
            for s in new_stabs:
                row.append(s.entries()[i])
            for g in cols:
                row.append(g[i - q_new] if i >= q_new else zero)
            rows.append(tuple(row))
        sigma = GeneratorMap(dim, tuple(rows))
        code = CodeSpec(
            name="cluster-both-gauged",
            dim=dim,
            q_per_site=q_new,
            css=False,
            sigma=sigma,
        )
        rep = verify_stabilizer(code)
        if not rep.passed:
            raise AssertionError(f"gauged cluster fails to commute: {rep}")
        return SublatticeGauging(code=code, extra_z_types=tuple(cols), flagged=False)

    rows = []
    for i in range(2 * q_new):
        row = []
        for s in new_stabs:
            row.append(s.entries()[i])
        for g in extra:
            row.append(pad(g)[i - q_new] if i >= q_new else zero)
        rows.append(tuple(row))
    sigma = GeneratorMap(dim, tuple(rows))
    code = CodeSpec(
        name=f"cluster-{which}-gauged", dim=dim, q_per_site=q_new, css=False, sigma=sigma
    )
    rep = verify_stabilizer(code)
    if not rep.passed:
        raise AssertionError(f"gauged cluster fails to commute: {rep}")
    padded = tuple(tuple(pad(g)) for g in extra)
    return SublatticeGauging(code=code, extra_z_types=padded, flagged=False)


def cluster_self_dual(c: ClusterSpec, box: tuple[int, ...] | None = None) -> bool:
    """Gauging both sublattices returns the model up to sublattice swap and X<->Z."""
    both = gauge_sublattice(c, "both", box)
    # output layout: [new matter partners: t types][new gauge partners: qm types]
    t, qm = c.gauge_q, c.matter_q
    q = t + qm
    transformed = []
    for s in both.code.generator_columns()[: qm + t]:
        # swap sublattices back (partner blocks -> original slots) and swap X/Z
        x = list(s.x_block)
        z = list(s.z_block)
        new_x = tuple(z[t:] + z[:t])
        new_z = tuple(x[t:] + x[:t])
        transformed.append(PauliColumn(c.dim, q, new_x, new_z))
    want = [normalize_column(s.entries()) for s in c.stabilizers]
    got = [normalize_column(s.entries()) for s in transformed]
    key = lambda col: tuple(p.sorted_terms() for p in col)
    return sorted(want, key=key) == sorted(got, key=key)


def extra_fields_redundant(
    c: ClusterSpec, shape: TorusShape, box: tuple[int, ...] | None = None
) -> bool:
    """On a torus, the kernel fields added by double gauging lie in the span
    of the main stabilizer types' translates."""
    both = gauge_sublattice(c, "both", box)
    q = both.code.q_per_site
    main = GeneratorMap(
        both.code.dim,
        tuple(
            tuple(s.entries()[i] for s in both.code.generator_columns()[: c.matter_q + c.gauge_q])
            for i in range(2 * q)
        ),
    )
    main_t = instantiate(main, shape)
    for g in both.extra_z_types:
        zero = LaurentPoly.zero(c.dim)
        col = PauliColumn(c.dim, q, (zero,) * q, tuple(g))
        v = pauli_vector(col, shape)
        if main_t.solve(v) is None:
            return False
    return True
