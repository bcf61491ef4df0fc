"""Pauli operators as polynomial columns and module maps between them.

A Pauli operator on a lattice with Q qubits per site is a column of 2Q
Laurent polynomials: Q X-block entries followed by Q Z-block entries.
Generator maps are rectangular matrices of polynomials; composing the
symplectic conjugate of a stabilizer map with the map itself tests
commutativity of every pair of generator translates at once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import LaurentPoly


@dataclass(frozen=True)
class GeneratorMap:
    """Matrix of Laurent polynomials, stored as a tuple of rows."""

    dim: int
    entries: tuple[tuple[LaurentPoly, ...], ...]

    def __post_init__(self) -> None:
        width = None
        for row in self.entries:
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise ValueError("ragged generator map")
            for p in row:
                if p.dim != self.dim:
                    raise ValueError("entry dimension does not match map dimension")

    @classmethod
    def from_rows(cls, dim: int, rows) -> GeneratorMap:
        return cls(dim, tuple(tuple(row) for row in rows))

    @classmethod
    def zero(cls, dim: int, rows: int, cols: int) -> GeneratorMap:
        z = LaurentPoly.zero(dim)
        return cls(dim, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, dim: int, n: int) -> GeneratorMap:
        one = LaurentPoly.one(dim)
        z = LaurentPoly.zero(dim)
        return cls(dim, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.entries[i][j]

    def column(self, j: int) -> tuple[LaurentPoly, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[LaurentPoly, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def dagger(self) -> GeneratorMap:
        """Transpose with every entry sent through the antipode."""
        return GeneratorMap(
            self.dim,
            tuple(
                tuple(self.entries[i][j].antipode() for i in range(self.rows))
                for j in range(self.cols)
            ),
        )

    def compose(self, other: GeneratorMap) -> GeneratorMap:
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in composition: {self.rows}x{self.cols} o {other.rows}x{other.cols}"
            )
        if self.dim != other.dim:
            raise ValueError("dimension mismatch in composition")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = LaurentPoly.zero(self.dim)
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(tuple(row))
        return GeneratorMap(self.dim, tuple(out))

    def __matmul__(self, other: GeneratorMap) -> GeneratorMap:
        return self.compose(other)

    def hstack(self, other: GeneratorMap) -> GeneratorMap:
        if self.rows != other.rows or self.dim != other.dim:
            raise ValueError("row mismatch in hstack")
        return GeneratorMap(
            self.dim, tuple(a + b for a, b in zip(self.entries, other.entries))
        )

    def vstack(self, other: GeneratorMap) -> GeneratorMap:
        if self.cols != other.cols or self.dim != other.dim:
            raise ValueError("column mismatch in vstack")
        return GeneratorMap(self.dim, self.entries + other.entries)

    def support_extent(self) -> tuple[int, ...]:
        """Per-axis width of the combined support box of all entries (0 for a zero map)."""
        lo = [0] * self.dim
        hi = [0] * self.dim
        seen = False
        for row in self.entries:
            for p in row:
                if p.is_zero():
                    continue
                plo, phi = p.support_box()
                if not seen:
                    lo, hi = list(plo), list(phi)
                    seen = True
                else:
                    lo = [min(a, b) for a, b in zip(lo, plo)]
                    hi = [max(a, b) for a, b in zip(hi, phi)]
        return tuple(h - l for l, h in zip(lo, hi))


def dagger(m: GeneratorMap) -> GeneratorMap:
    return m.dagger()


def compose(a: GeneratorMap, b: GeneratorMap) -> GeneratorMap:
    return a.compose(b)


@dataclass(frozen=True)
class PauliColumn:
    """A lattice Pauli operator: Q X-block and Q Z-block polynomials."""

    dim: int
    q: int
    x_block: tuple[LaurentPoly, ...]
    z_block: tuple[LaurentPoly, ...]

    def __post_init__(self) -> None:
        if len(self.x_block) != self.q or len(self.z_block) != self.q:
            raise ValueError("block length does not match qubit count")
        for p in self.x_block + self.z_block:
            if p.dim != self.dim:
                raise ValueError("entry dimension mismatch")

    @classmethod
    def identity(cls, dim: int, q: int) -> PauliColumn:
        z = LaurentPoly.zero(dim)
        return cls(dim, q, (z,) * q, (z,) * q)

    @classmethod
    def from_entries(cls, dim: int, entries) -> PauliColumn:
        """Build from a flat 2Q sequence of polynomials (X block then Z block)."""
        entries = tuple(entries)
        if len(entries) % 2:
            raise ValueError("need an even number of entries")
        q = len(entries) // 2
        return cls(dim, q, entries[:q], entries[q:])

    def entries(self) -> tuple[LaurentPoly, ...]:
        return self.x_block + self.z_block

    def is_identity(self) -> bool:
        return all(p.is_zero() for p in self.entries())

    def shift(self, exponents: tuple[int, ...]) -> PauliColumn:
        return PauliColumn(
            self.dim,
            self.q,
            tuple(p.shift(exponents) for p in self.x_block),
            tuple(p.shift(exponents) for p in self.z_block),
        )


def symplectic_pair(a: PauliColumn, b: PauliColumn) -> LaurentPoly:
    """Full commutation polynomial of two Pauli columns.

    The coefficient of x^i is 1 exactly when b anticommutes with the
    i-translate of a; the constant term alone decides the untranslated
    pair, and the whole polynomial vanishes iff all translate pairs
    commute.
    """
    if a.dim != b.dim or a.q != b.q:
        raise ValueError("shape mismatch in symplectic pairing")
    acc = LaurentPoly.zero(a.dim)
    for q in range(a.q):
        acc = acc + a.z_block[q].antipode() * b.x_block[q]
        acc = acc + a.x_block[q].antipode() * b.z_block[q]
    return acc


def epsilon_of(sigma: GeneratorMap) -> GeneratorMap:
    """Symplectic conjugate of a full stabilizer map (2Q rows).

    Row t of the result is the dagger of generator column t with its X and
    Z blocks exchanged, so that (epsilon o sigma)[t, t'] is the symplectic
    pairing polynomial of generators t and t'.
    """
    if sigma.rows % 2:
        raise ValueError("stabilizer map must have an even number of rows")
    q = sigma.rows // 2
    out = []
    for t in range(sigma.cols):
        row = [sigma.entries[q + i][t].antipode() for i in range(q)]
        row += [sigma.entries[i][t].antipode() for i in range(q)]
        out.append(tuple(row))
    return GeneratorMap(sigma.dim, tuple(out))


@dataclass(frozen=True)
class CodeSpec:
    """A translation-invariant stabilizer Hamiltonian.

    CSS codes carry sigma_x and sigma_z (Q x T_x and Q x T_z, each in its
    own sector); mixed codes carry the full 2Q x T map in `sigma`.
    """

    name: str
    dim: int
    q_per_site: int
    css: bool
    sigma_x: GeneratorMap | None = None
    sigma_z: GeneratorMap | None = None
    sigma: GeneratorMap | None = None
    notes: str = ""

    def __post_init__(self) -> None:
        if self.css:
            for m in (self.sigma_x, self.sigma_z):
                if m is not None and m.rows != self.q_per_site:
                    raise ValueError("CSS sector map must have Q rows")
        else:
            if self.sigma is None or self.sigma.rows != 2 * self.q_per_site:
                raise ValueError("mixed code needs a 2Q-row sigma")

    @property
    def n_x_types(self) -> int:
        return self.sigma_x.cols if (self.css and self.sigma_x is not None) else 0

    @property
    def n_z_types(self) -> int:
        return self.sigma_z.cols if (self.css and self.sigma_z is not None) else 0

    def full_sigma(self) -> GeneratorMap:
        """The stabilizer map on the full 2Q-row Pauli module."""
        if not self.css:
            assert self.sigma is not None
            return self.sigma
        q = self.q_per_site
        tx = self.n_x_types
        tz = self.n_z_types
        z = LaurentPoly.zero(self.dim)
        rows = []
        for i in range(q):
            xrow = tuple(self.sigma_x.entries[i]) if tx else ()
            rows.append(xrow + (z,) * tz)
        for i in range(q):
            zrow = tuple(self.sigma_z.entries[i]) if tz else ()
            rows.append((z,) * tx + zrow)
        return GeneratorMap(self.dim, tuple(rows))

    def generator_columns(self) -> list[PauliColumn]:
        full = self.full_sigma()
        return [PauliColumn.from_entries(self.dim, full.column(j)) for j in range(full.cols)]


@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    witness: tuple[int, int, LaurentPoly] | None = None

    def __str__(self) -> str:
        if self.passed:
            return "commuting: all generator translate pairs commute"
        t, u, p = self.witness
        return f"NOT commuting: generators {t} and {u} pair to {p}"


def verify_stabilizer(code: CodeSpec) -> VerifyReport:
    """Check epsilon o sigma = 0 symbolically; on failure return the witness entry."""
    sigma = code.full_sigma()
    if sigma.cols == 0:
        return VerifyReport(True)
    product = epsilon_of(sigma).compose(sigma)
    for t in range(product.rows):
        for u in range(product.cols):
            if not product.entries[t][u].is_zero():
                return VerifyReport(False, (t, u, product.entries[t][u]))
    return VerifyReport(True)


def normalize_column(entries: tuple[LaurentPoly, ...]) -> tuple[LaurentPoly, ...]:
    """Translate a polynomial column so its lexicographically least monomial sits at 0.

    Columns that differ only by an overall monomial factor normalize to the
    same value, which is the equality-up-to-translation used throughout.
    """
    monos = sorted(t for p in entries for t in p.terms)
    if not monos:
        return entries
    least = monos[0]
    shift = tuple(-e for e in least)
    return tuple(p.shift(shift) for p in entries)


def columns_equal_up_to_translation(
    a: tuple[LaurentPoly, ...], b: tuple[LaurentPoly, ...]
) -> bool:
    return normalize_column(a) == normalize_column(b)


def canonical_column_set(m: GeneratorMap) -> list[tuple[LaurentPoly, ...]]:
    """Translation-normalized columns in a canonical sort order."""
    cols = [normalize_column(m.column(j)) for j in range(m.cols)]
    return sorted(cols, key=lambda col: tuple(p.sorted_terms() for p in col))


def maps_equal_up_to_translation(a: GeneratorMap, b: GeneratorMap) -> bool:
    """Equality of generator sets up to per-column translation and column order."""
    if a.dim != b.dim or a.rows != b.rows or a.cols != b.cols:
        return False
    return canonical_column_set(a) == canonical_column_set(b)


_LETTER = {(0, 0): "I", (1, 0): "X", (0, 1): "Z", (1, 1): "Y"}


def _site_label(op: PauliColumn, site: tuple[int, ...]) -> str:
    out = []
    for q in range(op.q):
        x = 1 if site in op.x_block[q].terms else 0
        z = 1 if site in op.z_block[q].terms else 0
        out.append(_LETTER[(x, z)])
    return "".join(out)


def render_diagram(op: PauliColumn | GeneratorMap) -> str:
    """ASCII per-site letter diagram of an operator's support box (dim <= 3).

    For dim 2 the y axis points up; for dim 3 the grid is printed one z
    slice at a time.  Each site shows Q letters from {I, X, Z, Y}.
    """
    if isinstance(op, GeneratorMap):
        cols = [
            PauliColumn.from_entries(op.dim, op.column(j)) for j in range(op.cols)
        ]
        return "\n\n".join(
            f"generator {j}:\n{render_diagram(c)}" for j, c in enumerate(cols)
        )
    if op.dim > 3:
        raise ValueError("diagrams are only rendered for dim <= 3")
    if op.is_identity():
        return "I" * op.q
    monos = [t for p in op.entries() for t in p.terms]
    lo = tuple(min(m[i] for m in monos) for i in range(op.dim))
    hi = tuple(max(m[i] for m in monos) for i in range(op.dim))
    if op.dim == 1:
        return " ".join(_site_label(op, (x,)) for x in range(lo[0], hi[0] + 1))
    if op.dim == 2:
        lines = []
        for y in range(hi[1], lo[1] - 1, -1):
            lines.append(
                " ".join(_site_label(op, (x, y)) for x in range(lo[0], hi[0] + 1))
            )
        return "\n".join(lines)
    lines = []
    for z in range(lo[2], hi[2] + 1):
        lines.append(f"z={z}:")
        for y in range(hi[1], lo[1] - 1, -1):
            lines.append(
                "  "
                + " ".join(_site_label(op, (x, y, z)) for x in range(lo[0], hi[0] + 1))
            )
    return "\n".join(lines)
