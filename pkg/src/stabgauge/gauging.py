"""The gauging duality for tensor-product X symmetries of Pauli models.

A symmetry model is a lattice of matter qubits whose X symmetry is pinned
down locally by Z-constraint fields, the columns of a map eta.  Gauging
adjoins one gauge qubit per constraint type, sends single-site matter X
to an X star on adjacent gauge qubits, sends each constraint field to a
single gauge Z, and adds the box-local kernel generators of eta as
flat-connection Z fields.  The result is a CSS code; reading the
construction backwards from a CSS code recovers the matter model, and
doing both is the identity up to per-column translation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2 import Gf2Matrix
from .pauli import (
    CodeSpec,
    GeneratorMap,
    PauliColumn,
    canonical_column_set,
    epsilon_of,
    maps_equal_up_to_translation,
    verify_stabilizer,
)
from .poly import LaurentPoly
from .syzygy import KernelBasis, bounded_kernel, certify_on_torus


class NotSymmetricError(ValueError):
    """Raised when an operator's Z part is not generated by the constraints."""


@dataclass(frozen=True)
class SymmetryModel:
    """Matter qubits with a locally-defined tensor-product X symmetry.

    constraint_map has one row per matter qubit type and one column per
    Z-constraint type; local_x_map holds any box-local X fields commuting
    with every constraint (empty for models with only global symmetries).
    """

    dim: int
    matter_q: int
    constraint_map: GeneratorMap
    local_x_map: GeneratorMap | None = None
    notes: str = ""

    def __post_init__(self) -> None:
        if self.constraint_map.rows != self.matter_q:
            raise ValueError("constraint map must have one row per matter qubit type")
        if self.local_x_map is not None and self.local_x_map.rows != self.matter_q:
            raise ValueError("local X map must have one row per matter qubit type")

    @property
    def n_constraints(self) -> int:
        return self.constraint_map.cols

    def check_compatibility(self) -> bool:
        """Local X fields must commute with every constraint field."""
        if self.local_x_map is None or self.local_x_map.cols == 0:
            return True
        return self.local_x_map.dagger().compose(self.constraint_map).is_zero()


@dataclass
class GaugingComplex:
    """Stabilizer data of a gauged model together with its kernel basis."""

    sigma: GeneratorMap
    epsilon: GeneratorMap
    mu: KernelBasis
    source: SymmetryModel
    mu_certified: bool


def symmetry_model_from_code(code: CodeSpec) -> SymmetryModel:
    """Interpret a single-sector (Z-only or X-only) code as a symmetry model."""
    if not code.css:
        raise ValueError("only CSS codes define a symmetry model directly")
    if code.n_x_types > 0 and code.n_z_types > 0:
        return ungauge_css(code)
    sector = code.sigma_z if code.n_z_types > 0 else code.sigma_x
    if sector is None:
        raise ValueError("code has no generators")
    phi = bounded_kernel(sector.dagger())
    return SymmetryModel(
        dim=code.dim,
        matter_q=code.q_per_site,
        constraint_map=sector,
        local_x_map=phi.matrix(),
        notes=f"from {code.name}",
    )


def ungauge_css(code: CodeSpec) -> SymmetryModel:
    """Read the matter model off a CSS code.

    The matter lattice carries one qubit per X-stabilizer type; the
    constraints are the dagger of the X sector map (one per original qubit
    type), and the local X fields generate the box-local kernel of the X
    sector map.
    """
    if not code.css:
        raise ValueError("ungauging needs a CSS code")
    report = verify_stabilizer(code)
    if not report.passed:
        raise ValueError(f"code is not commuting: {report}")
    if code.n_x_types == 0:
        raise ValueError("code has no X stabilizers to ungauge")
    eta = code.sigma_x.dagger()
    phi = bounded_kernel(code.sigma_x)
    model = SymmetryModel(
        dim=code.dim,
        matter_q=code.n_x_types,
        constraint_map=eta,
        local_x_map=phi.matrix(),
        notes=f"ungauged {code.name}",
    )
    if not model.check_compatibility():
        raise AssertionError("local X fields fail to commute with the constraints")
    return model


def _certification_lengths(model: SymmetryModel, box: tuple[int, ...]) -> tuple[int, ...]:
    ext = model.constraint_map.support_extent()
    return tuple(max(3, 2 * (e + max(b, 1)) + 2) for e, b in zip(ext, box))


def gauge(
    model: SymmetryModel, box: tuple[int, ...] | None = None
) -> tuple[CodeSpec, GaugingComplex]:
    """Gauge a symmetry model into a CSS code on the gauge-qubit lattice.

    X stabilizers are the dagger of the constraint map (one per matter
    qubit type); Z stabilizers are the box-local kernel generators of the
    constraint map.  The kernel basis is certified on a torus large enough
    to separate local from wrapping kernel elements; an inconclusive
    certificate flags the result but still returns the code.
    """
    if not model.check_compatibility():
        raise ValueError("model violates constraint compatibility")
    eta = model.constraint_map
    mu = bounded_kernel(eta, box)
    cert = certify_on_torus(mu, _certification_lengths(model, mu.box))
    sigma_x = eta.dagger()
    sigma_z = mu.matrix()
    code = CodeSpec(
        name="gauged",
        dim=model.dim,
        q_per_site=model.n_constraints,
        css=True,
        sigma_x=sigma_x,
        sigma_z=sigma_z,
        notes=f"gauged from: {model.notes}" if model.notes else "gauged",
    )
    sigma = code.full_sigma()
    complex_ = GaugingComplex(
        sigma=sigma,
        epsilon=epsilon_of(sigma),
        mu=mu,
        source=model,
        mu_certified=cert.passed,
    )
    if not complex_.epsilon.compose(complex_.sigma).is_zero():
        raise AssertionError("gauged code fails the commutation identity")
    return code, complex_


def _swap_sectors(code: CodeSpec) -> CodeSpec:
    """Exchange the X and Z sectors of a CSS code (sitewise Hadamard)."""
    return CodeSpec(
        name=f"{code.name}-swapped",
        dim=code.dim,
        q_per_site=code.q_per_site,
        css=True,
        sigma_x=code.sigma_z,
        sigma_z=code.sigma_x,
        notes=code.notes,
    )


@dataclass(frozen=True)
class DualityReport:
    passed: bool
    forward_match: bool
    dual_match: bool
    diff: str = ""

    def __str__(self) -> str:
        if self.passed:
            return "duality round trip: pass (both gauging orders)"
        return f"duality round trip: FAIL\n{self.diff}"


def _describe_columns(label: str, m: GeneratorMap) -> str:
    cols = canonical_column_set(m)
    lines = [label]
    for col in cols:
        lines.append("  (" + ", ".join(str(p) for p in col) + ")")
    return "\n".join(lines)


def double_gauge_check(code: CodeSpec, box: tuple[int, ...] | None = None) -> DualityReport:
    """Ungauge then regauge a CSS code, in both sector orders, and compare.

    The comparison allows per-column monomial translation and column
    reordering; the dual order exchanges the X and Z sectors before and
    after, which is the relabeling the construction itself introduces.
    """
    if not code.css:
        raise ValueError("duality check needs a CSS code")
    report = verify_stabilizer(code)
    if not report.passed:
        raise ValueError(f"code is not commuting: {report}")

    def round_trip(c: CodeSpec) -> tuple[bool, str]:
        model = ungauge_css(c)
        regauged, _ = gauge(model, box)
        ok_x = maps_equal_up_to_translation(regauged.sigma_x, c.sigma_x)
        ok_z = maps_equal_up_to_translation(regauged.sigma_z, c.sigma_z)
        if ok_x and ok_z:
            return True, ""
        diff = []
        if not ok_x:
            diff.append(_describe_columns("expected X:", c.sigma_x))
            diff.append(_describe_columns("regauged X:", regauged.sigma_x))
        if not ok_z:
            diff.append(_describe_columns("expected Z:", c.sigma_z))
            diff.append(_describe_columns("regauged Z:", regauged.sigma_z))
        return False, "\n".join(diff)

    fwd_ok, fwd_diff = round_trip(code)
    dual_ok, dual_diff = round_trip(_swap_sectors(code))
    passed = fwd_ok and dual_ok
    diff = "\n".join(x for x in (fwd_diff, dual_diff) if x)
    return DualityReport(passed=passed, forward_match=fwd_ok, dual_match=dual_ok, diff=diff)


def _solve_constraint_preimage(
    eta: GeneratorMap, z_block: tuple[LaurentPoly, ...]
) -> tuple[LaurentPoly, ...]:
    """Solve eta . p = z with p supported in a box around z's support.

    Deterministic: the underlying GF(2) solve zeroes all free variables.
    Raises NotSymmetricError when no box-local preimage exists.
    """
    import itertools as it

    dim = eta.dim
    zero = all(p.is_zero() for p in z_block)
    if zero:
        return tuple(LaurentPoly.zero(dim) for _ in range(eta.cols))
    # a single translate of a constraint column maps to a single Z; detect it
    # exactly so those images stay canonical rather than kernel-shifted
    for t in range(eta.cols):
        col = eta.column(t)
        ref = next((p for p in col if not p.is_zero()), None)
        if ref is None:
            continue
        cand = next((p for p in z_block if not p.is_zero()), None)
        if cand is None or len(cand.terms) != len(ref.terms):
            continue
        shift = tuple(
            a - b for a, b in zip(min(cand.terms), min(ref.terms))
        )
        if all(zp == cp.shift(shift) for zp, cp in zip(z_block, col)):
            out = [LaurentPoly.zero(dim)] * eta.cols
            out[t] = LaurentPoly.monomial(shift)
            return tuple(out)
    monos = [t for p in z_block for t in p.terms]
    zlo = tuple(min(m[i] for m in monos) for i in range(dim))
    zhi = tuple(max(m[i] for m in monos) for i in range(dim))
    elo = [0] * dim
    ehi = [0] * dim
    for row in eta.entries:
        for p in row:
            if p.is_zero():
                continue
            plo, phi = p.support_box()
            elo = [min(a, b) for a, b in zip(elo, plo)]
            ehi = [max(a, b) for a, b in zip(ehi, phi)]
    lo = tuple(a - b for a, b in zip(zlo, ehi))
    hi = tuple(a - b for a, b in zip(zhi, elo))
    points = list(it.product(*(range(l, h + 1) for l, h in zip(lo, hi))))
    pt_index = {e: k for k, e in enumerate(points)}
    n_vars = eta.cols * len(points)

    region: set[tuple[int, ...]] = set()
    for q in range(eta.rows):
        for t in range(eta.cols):
            for m in eta.entries[q][t].terms:
                for e in points:
                    region.add(tuple(a + b for a, b in zip(m, e)))
        for m in z_block[q].terms:
            region.add(m)
    region_list = sorted(region)

    rows = []
    rhs = 0
    r = 0
    for q in range(eta.rows):
        for u in region_list:
            row = 0
            for t in range(eta.cols):
                terms = eta.entries[q][t].terms
                for e, k in pt_index.items():
                    diff = tuple(a - b for a, b in zip(u, e))
                    if diff in terms:
                        row ^= 1 << (t * len(points) + k)
            rows.append(row)
            if u in z_block[q].terms:
                rhs |= 1 << r
            r += 1
    system = Gf2Matrix(len(rows), n_vars, rows)
    x = system.solve(rhs)
    if x is None:
        raise NotSymmetricError("operator not symmetric: Z part has no local preimage")
    out = []
    for t in range(eta.cols):
        terms = [points[k] for k in range(len(points)) if (x >> (t * len(points) + k)) & 1]
        out.append(LaurentPoly.from_terms(dim, terms))
    return tuple(out)


def gauge_operator(model: SymmetryModel, op: PauliColumn) -> PauliColumn:
    """Map a symmetric matter operator to its image on the gauge qubits.

    Single-site matter X factors become X stars read off the dagger of the
    constraint map; the Z part is replaced by one deterministic preimage
    under the constraint map, single Z factors on gauge qubits.
    """
    if op.dim != model.dim or op.q != model.matter_q:
        raise ValueError("operator does not live on the matter lattice")
    eta = model.constraint_map
    eta_dag = eta.dagger()
    x_out = []
    for t in range(eta.cols):
        acc = LaurentPoly.zero(model.dim)
        for q in range(model.matter_q):
            acc = acc + eta_dag.entries[t][q] * op.x_block[q]
        x_out.append(acc)
    z_out = _solve_constraint_preimage(eta, op.z_block)
    return PauliColumn(model.dim, eta.cols, tuple(x_out), tuple(z_out))


def enlarged_identity_layout(model: SymmetryModel) -> int:
    """Qubits per site on the matter-plus-gauge lattice (matter types first)."""
    return model.matter_q + model.n_constraints


def pi_generators(model: SymmetryModel) -> list[PauliColumn]:
    """Local Gauss-law generators on the matter-plus-gauge lattice.

    One per matter qubit type: X on the matter qubit times X on every
    adjacent gauge qubit under the dagger of the constraint map.
    """
    dim = model.dim
    qm = model.matter_q
    t = model.n_constraints
    eta_dag = model.constraint_map.dagger()
    zero = LaurentPoly.zero(dim)
    out = []
    for q in range(qm):
        x_matter = [LaurentPoly.one(dim) if i == q else zero for i in range(qm)]
        x_gauge = [eta_dag.entries[j][q] for j in range(t)]
        out.append(
            PauliColumn(dim, qm + t, tuple(x_matter + x_gauge), (zero,) * (qm + t))
        )
    return out


def conjugate_by_disentangler(model: SymmetryModel, op: PauliColumn) -> PauliColumn:
    """Conjugate an operator on the enlarged lattice by the CX disentangler.

    Controls sit on matter qubits, targets on their adjacent gauge qubits,
    so matter X picks up the adjacent gauge X pattern and gauge Z picks up
    the adjacent matter Z pattern; matter Z and gauge X are untouched.
    Every Gauss-law generator maps to its bare single-site matter X.
    """
    qm = model.matter_q
    t = model.n_constraints
    if op.dim != model.dim or op.q != qm + t:
        raise ValueError("operator does not live on the enlarged lattice")
    eta = model.constraint_map
    eta_dag = eta.dagger()
    x_matter = list(op.x_block[:qm])
    x_gauge = list(op.x_block[qm:])
    z_matter = list(op.z_block[:qm])
    z_gauge = list(op.z_block[qm:])
    for j in range(t):
        acc = x_gauge[j]
        for q in range(qm):
            acc = acc + eta_dag.entries[j][q] * x_matter[q]
        x_gauge[j] = acc
    for q in range(qm):
        acc = z_matter[q]
        for j in range(t):
            acc = acc + eta.entries[q][j] * z_gauge[j]
        z_matter[q] = acc
    return PauliColumn(
        op.dim, op.q, tuple(x_matter + x_gauge), tuple(z_matter + z_gauge)
    )
