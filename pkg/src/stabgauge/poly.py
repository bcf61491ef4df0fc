"""Multivariate Laurent polynomials over GF(2).

A polynomial is a finite set of integer exponent vectors; every present
monomial has coefficient 1, so addition is symmetric difference.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

Monomial = tuple[int, ...]

_FACTOR_RE = re.compile(r"^(x(\d+)|[xyz])(?:\^(-?\d+))?$")
_XYZ = {"x": 1, "y": 2, "z": 3}


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial over GF(2) in `dim` variables."""

    dim: int
    terms: frozenset[Monomial] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        for t in self.terms:
            if len(t) != self.dim:
                raise ValueError(f"exponent vector {t} does not match dim {self.dim}")

    @classmethod
    def zero(cls, dim: int) -> LaurentPoly:
        return cls(dim, frozenset())

    @classmethod
    def one(cls, dim: int) -> LaurentPoly:
        return cls(dim, frozenset({(0,) * dim}))

    @classmethod
    def monomial(cls, exponents: tuple[int, ...] | list[int]) -> LaurentPoly:
        t = tuple(int(e) for e in exponents)
        return cls(len(t), frozenset({t}))

    @classmethod
    def from_terms(cls, dim: int, terms) -> LaurentPoly:
        """Build from an iterable of exponent vectors, cancelling duplicates mod 2."""
        acc: set[Monomial] = set()
        for t in terms:
            acc.symmetric_difference_update({tuple(int(e) for e in t)})
        return cls(dim, frozenset(acc))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        return LaurentPoly(self.dim, self.terms ^ other.terms)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        acc: set[Monomial] = set()
        for a in self.terms:
            for b in other.terms:
                m = tuple(x + y for x, y in zip(a, b))
                if m in acc:
                    acc.remove(m)
                else:
                    acc.add(m)
        return LaurentPoly(self.dim, frozenset(acc))

    def antipode(self) -> LaurentPoly:
        """Negate every exponent vector (spatial inversion); an involution."""
        return LaurentPoly(self.dim, frozenset(tuple(-e for e in t) for t in self.terms))

    def shift(self, exponents: tuple[int, ...]) -> LaurentPoly:
        """Multiply by the monomial with the given exponent vector."""
        if len(exponents) != self.dim:
            raise ValueError("shift vector has wrong length")
        return LaurentPoly(
            self.dim,
            frozenset(tuple(a + b for a, b in zip(t, exponents)) for t in self.terms),
        )

    def support_box(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Componentwise (min, max) of the exponent vectors. Errors on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no support box")
        lo = tuple(min(t[i] for t in self.terms) for i in range(self.dim))
        hi = tuple(max(t[i] for t in self.terms) for i in range(self.dim))
        return lo, hi

    def constant_term(self) -> int:
        return 1 if (0,) * self.dim in self.terms else 0

    def sorted_terms(self) -> list[Monomial]:
        return sorted(self.terms)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.dim}, {format_poly(self)!r})"


def _format_monomial(t: Monomial) -> str:
    if all(e == 0 for e in t):
        return "1"
    parts = []
    for i, e in enumerate(t):
        if e == 0:
            continue
        name = f"x{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: LaurentPoly) -> str:
    """Canonical text form: monomials sorted lexicographically, joined by ' + '."""
    if not p.terms:
        return "0"
    return " + ".join(_format_monomial(t) for t in p.sorted_terms())


def parse_poly(text: str, dim: int) -> LaurentPoly:
    """Parse the canonical text form.

    Accepts `x1, x2, ...` names and, for dim <= 3, the aliases x, y, z.
    """
    text = text.strip()
    if text in ("0", ""):
        return LaurentPoly.zero(dim)
    terms: set[Monomial] = set()
    for chunk in text.split("+"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError("empty term")
        exps = [0] * dim
        if chunk != "1":
            for factor in chunk.split("*"):
                factor = factor.strip()
                if factor == "1":
                    continue
                m = _FACTOR_RE.match(factor)
                if not m:
                    raise ValueError(f"cannot parse monomial factor {factor!r}")
                if m.group(2) is not None:
                    idx = int(m.group(2))
                else:
                    idx = _XYZ[m.group(1)]
                    if dim > 3:
                        raise ValueError("x/y/z aliases are only valid for dim <= 3")
                if not 1 <= idx <= dim:
                    raise ValueError(f"variable index {idx} out of range for dim {dim}")
                exps[idx - 1] += int(m.group(3)) if m.group(3) else 1
        t = tuple(exps)
        if t in terms:
            terms.remove(t)
        else:
            terms.add(t)
    return LaurentPoly(dim, frozenset(terms))
