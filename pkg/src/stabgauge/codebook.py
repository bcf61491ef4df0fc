"""Built-in example codes and the JSON exchange format."""

from __future__ import annotations

import itertools
import json
import re
from math import comb

from .cluster import build_cluster
from .gauging import symmetry_model_from_code
from .pauli import CodeSpec, GeneratorMap
from .poly import LaurentPoly, parse_poly

_GEN_TORIC_RE = re.compile(r"^generalized_toric\((\d+),\s*(\d+)\)$")


def _p(text: str, dim: int) -> LaurentPoly:
    return parse_poly(text, dim)


def _toric2d() -> CodeSpec:
    sigma_x = GeneratorMap.from_rows(2, [[_p("x + x*y", 2)], [_p("y + x*y", 2)]])
    sigma_z = GeneratorMap.from_rows(2, [[_p("1 + x", 2)], [_p("1 + y", 2)]])
    return CodeSpec(
        name="toric2d",
        dim=2,
        q_per_site=2,
        css=True,
        sigma_x=sigma_x,
        sigma_z=sigma_z,
        notes="2D toric code: vertex X stars and plaquette Z loops",
    )


def _cubic() -> CodeSpec:
    sigma_x = GeneratorMap.from_rows(
        3, [[_p("x + y + z + x*y*z", 3)], [_p("1 + y + x*y + y*z", 3)]]
    )
    sigma_z = GeneratorMap.from_rows(
        3, [[_p("x + z + x*z + x*y*z", 3)], [_p("1 + x*y + x*z + y*z", 3)]]
    )
    return CodeSpec(
        name="cubic",
        dim=3,
        q_per_site=2,
        css=True,
        sigma_x=sigma_x,
        sigma_z=sigma_z,
        notes="3D cubic code: two qubits per site, 8-corner X and Z generators",
    )


def _ising2d() -> CodeSpec:
    sigma_z = GeneratorMap.from_rows(2, [[_p("1 + y", 2), _p("1 + x", 2)]])
    return CodeSpec(
        name="ising2d",
        dim=2,
        q_per_site=1,
        css=True,
        sigma_x=None,
        sigma_z=sigma_z,
        notes="2D nearest-neighbour ZZ bond model; global X symmetry",
    )


def _fractal_ising() -> CodeSpec:
    sigma_z = GeneratorMap.from_rows(
        3, [[_p("1 + x*y + x*z + y*z", 3), _p("x + z + x*z + x*y*z", 3)]]
    )
    return CodeSpec(
        name="fractal_ising",
        dim=3,
        q_per_site=1,
        css=True,
        sigma_x=None,
        sigma_z=sigma_z,
        notes="four-body ZZZZ corner model with fractal X symmetries",
    )


def generalized_toric(d: int, k: int) -> CodeSpec:
    """Hypercubic code with qubits on k-cells, X stabilizers on (k-1)-cells
    and Z stabilizers on (k+1)-cells."""
    if not (2 <= d <= 3):
        raise ValueError("generalized toric codes are built for d in {2, 3}")
    if not (1 <= k <= d - 1):
        raise ValueError(f"k must satisfy 1 <= k <= d-1, got k={k} for d={d}")
    axes = list(range(d))
    k_cells = [frozenset(s) for s in itertools.combinations(axes, k)]
    x_cells = [frozenset(s) for s in itertools.combinations(axes, k - 1)]
    z_cells = [frozenset(s) for s in itertools.combinations(axes, k + 1)]
    zero = LaurentPoly.zero(d)

    def unit(axis: int, sign: int) -> LaurentPoly:
        e = [0] * d
        e[axis] = sign
        return LaurentPoly.one(d) + LaurentPoly.monomial(tuple(e))

    x_rows = []
    z_rows = []
    for cell in k_cells:
        xrow = []
        for r in x_cells:
            if r <= cell:
                (axis,) = tuple(cell - r)
                xrow.append(unit(axis, -1))
            else:
                xrow.append(zero)
        x_rows.append(tuple(xrow))
        zrow = []
        for w in z_cells:
            if cell <= w:
                (axis,) = tuple(w - cell)
                zrow.append(unit(axis, +1))
            else:
                zrow.append(zero)
        z_rows.append(tuple(zrow))
    return CodeSpec(
        name=f"generalized_toric({d},{k})",
        dim=d,
        q_per_site=comb(d, k),
        css=True,
        sigma_x=GeneratorMap(d, tuple(x_rows)),
        sigma_z=GeneratorMap(d, tuple(z_rows)),
        notes=f"{d}-dimensional hypercubic code on {k}-cells",
    )


def _cluster_from(code_name: str, out_name: str) -> CodeSpec:
    model = symmetry_model_from_code(get_code(code_name))
    spec = build_cluster(model)
    code = spec.to_code(out_name)
    return CodeSpec(
        name=out_name,
        dim=code.dim,
        q_per_site=code.q_per_site,
        css=False,
        sigma=code.sigma,
        notes=f"cluster model on the bipartite constraint graph of {code_name}",
    )


_BUILDERS = {
    "toric2d": _toric2d,
    "cubic": _cubic,
    "ising2d": _ising2d,
    "fractal_ising": _fractal_ising,
    "cluster_toric": lambda: _cluster_from("ising2d", "cluster_toric"),
    "cluster_cubic": lambda: _cluster_from("fractal_ising", "cluster_cubic"),
}


def codebook_names() -> list[str]:
    return sorted(_BUILDERS) + ["generalized_toric(d,k)"]


def get_code(name: str) -> CodeSpec:
    """Look up a built-in code by name."""
    name = name.strip()
    if name in _BUILDERS:
        return _BUILDERS[name]()
    m = _GEN_TORIC_RE.match(name)
    if m:
        return generalized_toric(int(m.group(1)), int(m.group(2)))
    raise KeyError(f"unknown code {name!r}; known: {', '.join(codebook_names())}")


def _poly_to_json(p: LaurentPoly) -> list[list[int]]:
    return [list(t) for t in p.sorted_terms()]


def _poly_from_json(data, dim: int) -> LaurentPoly:
    terms = []
    for t in data:
        if len(t) != dim:
            raise ValueError(f"exponent vector {t} does not match dim {dim}")
        terms.append(tuple(int(e) for e in t))
    return LaurentPoly.from_terms(dim, terms)


def code_to_dict(code: CodeSpec) -> dict:
    full = code.full_sigma()
    q = code.q_per_site
    generators = []
    for j in range(full.cols):
        col = full.column(j)
        generators.append(
            {
                "x_block": [_poly_to_json(p) for p in col[:q]],
                "z_block": [_poly_to_json(p) for p in col[q:]],
            }
        )
    return {
        "name": code.name,
        "dim": code.dim,
        "q_per_site": q,
        "css": code.css,
        "generators": generators,
        "notes": code.notes,
    }


def code_from_dict(data: dict) -> CodeSpec:
    dim = int(data["dim"])
    q = int(data["q_per_site"])
    css = bool(data["css"])
    name = data.get("name", "unnamed")
    notes = data.get("notes", "")
    cols = []
    for gen in data["generators"]:
        x = [_poly_from_json(p, dim) for p in gen["x_block"]]
        z = [_poly_from_json(p, dim) for p in gen["z_block"]]
        if len(x) != q or len(z) != q:
            raise ValueError("generator block length does not match q_per_site")
        cols.append(tuple(x + z))
    if not css:
        rows = tuple(tuple(col[i] for col in cols) for i in range(2 * q))
        return CodeSpec(
            name=name, dim=dim, q_per_site=q, css=False,
            sigma=GeneratorMap(dim, rows), notes=notes,
        )
    x_cols = [c for c in cols if any(not p.is_zero() for p in c[:q])]
    z_cols = [c for c in cols if c not in x_cols]
    for c in x_cols:
        if any(not p.is_zero() for p in c[q:]):
            raise ValueError("CSS file contains a mixed generator")
    sigma_x = (
        GeneratorMap(dim, tuple(tuple(c[i] for c in x_cols) for i in range(q)))
        if x_cols
        else None
    )
    sigma_z = (
        GeneratorMap(dim, tuple(tuple(c[q + i] for c in z_cols) for i in range(q)))
        if z_cols
        else None
    )
    return CodeSpec(
        name=name, dim=dim, q_per_site=q, css=True,
        sigma_x=sigma_x, sigma_z=sigma_z, notes=notes,
    )


def dumps_code(code: CodeSpec) -> str:
    return json.dumps(code_to_dict(code), indent=2, sort_keys=True) + "\n"


def loads_code(text: str) -> CodeSpec:
    return code_from_dict(json.loads(text))
