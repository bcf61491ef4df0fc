import random

import pytest

from stabgauge.codebook import get_code
from stabgauge.pauli import (
    CodeSpec,
    GeneratorMap,
    PauliColumn,
    columns_equal_up_to_translation,
    epsilon_of,
    render_diagram,
    symplectic_pair,
    verify_stabilizer,
)
from stabgauge.poly import LaurentPoly, parse_poly


def p(text, dim=2):
    return parse_poly(text, dim)


def random_poly(rng, dim):
    terms = set()
    for _ in range(rng.randint(0, 4)):
        terms.add(tuple(rng.randint(-2, 2) for _ in range(dim)))
    return LaurentPoly.from_terms(dim, terms)


def random_map(rng, dim, rows, cols):
    return GeneratorMap(
        dim,
        tuple(tuple(random_poly(rng, dim) for _ in range(cols)) for _ in range(rows)),
    )


def test_dagger_involution():
    rng = random.Random(1)
    m = random_map(rng, 2, 3, 2)
    assert m.dagger().dagger() == m


def test_dagger_of_toric_star():
    star = GeneratorMap.from_rows(2, [[p("x + x*y")], [p("y + x*y")]])
    dag = star.dagger()
    assert dag.rows == 1 and dag.cols == 2
    assert dag.entries[0][0] == p("x^-1 + x^-1*y^-1")
    assert dag.entries[0][1] == p("y^-1 + x^-1*y^-1")


def test_dagger_zero():
    z = GeneratorMap.zero(3, 2, 2)
    assert z.dagger() == GeneratorMap.zero(3, 2, 2)


def test_single_qubit_x_z_anticommute():
    zero = LaurentPoly.zero(2)
    one = LaurentPoly.one(2)
    x = PauliColumn(2, 1, (one,), (zero,))
    z = PauliColumn(2, 1, (zero,), (one,))
    assert symplectic_pair(x, z).constant_term() == 1


def test_toric_generators_commute_fully():
    code = get_code("toric2d")
    cols = code.generator_columns()
    assert symplectic_pair(cols[0], cols[1]).is_zero()


def test_cubic_generators_commute_fully():
    code = get_code("cubic")
    cols = code.generator_columns()
    assert symplectic_pair(cols[0], cols[1]).is_zero()


def test_pair_antisymmetry_under_swap():
    rng = random.Random(5)
    for _ in range(20):
        a = PauliColumn(2, 2,
                        (random_poly(rng, 2), random_poly(rng, 2)),
                        (random_poly(rng, 2), random_poly(rng, 2)))
        b = PauliColumn(2, 2,
                        (random_poly(rng, 2), random_poly(rng, 2)),
                        (random_poly(rng, 2), random_poly(rng, 2)))
        assert symplectic_pair(a, b) == symplectic_pair(b, a).antipode()


def test_epsilon_annihilates_codebook_sigmas():
    for name in ("toric2d", "cubic", "ising2d", "fractal_ising"):
        sigma = get_code(name).full_sigma()
        assert epsilon_of(sigma).compose(sigma).is_zero()


def test_epsilon_single_x_generator():
    zero = LaurentPoly.zero(1)
    one = LaurentPoly.one(1)
    sigma = GeneratorMap(1, ((one,), (zero,)))
    assert epsilon_of(sigma).compose(sigma).is_zero()


def test_epsilon_rejects_odd_rows():
    with pytest.raises(ValueError):
        epsilon_of(GeneratorMap.zero(2, 3, 1))


def test_verify_stabilizer_passes_codebook():
    for name in ("toric2d", "cubic"):
        assert verify_stabilizer(get_code(name)).passed


def test_verify_catches_corruption():
    bad = CodeSpec(
        name="bad",
        dim=2,
        q_per_site=2,
        css=True,
        sigma_x=get_code("toric2d").sigma_x,
        sigma_z=GeneratorMap.from_rows(2, [[p("1 + x")], [p("1 + x")]]),
    )
    report = verify_stabilizer(bad)
    assert not report.passed
    t, u, poly = report.witness
    # the witness is the actual nonzero pairing polynomial
    cols = bad.generator_columns()
    assert symplectic_pair(cols[t], cols[u]) == poly
    assert not poly.is_zero()


def test_compose_identity():
    rng = random.Random(9)
    m = random_map(rng, 2, 3, 3)
    eye = GeneratorMap.identity(2, 3)
    assert eye.compose(m) == m
    assert m.compose(eye) == m


def test_compose_char2_cancellation():
    row = GeneratorMap.from_rows(2, [[p("1 + y"), p("1 + x")]])
    col = GeneratorMap.from_rows(2, [[p("1 + x")], [p("1 + y")]])
    assert row.compose(col).is_zero()


def test_compose_associative():
    rng = random.Random(11)
    for _ in range(10):
        a = random_map(rng, 2, 2, 3)
        b = random_map(rng, 2, 3, 2)
        c = random_map(rng, 2, 2, 2)
        assert a.compose(b).compose(c) == a.compose(b.compose(c))


def test_compose_shape_mismatch():
    with pytest.raises(ValueError):
        GeneratorMap.zero(2, 2, 3).compose(GeneratorMap.zero(2, 2, 2))


def test_css_sector_conditions():
    for name in ("toric2d", "cubic"):
        code = get_code(name)
        assert code.sigma_z.dagger().compose(code.sigma_x).is_zero()
        assert code.sigma_x.dagger().compose(code.sigma_z).is_zero()


def test_column_translation_normalization():
    a = (p("1 + x"), p("1 + y"))
    b = (p("x*y + x^2*y"), p("x*y + x*y^2"))
    assert columns_equal_up_to_translation(a, b)
    assert not columns_equal_up_to_translation(a, (p("1 + x"), p("1 + x")))


def test_render_two_qubit_example():
    op = PauliColumn(2, 2, (p("1 + y"), p("x*y")), (p("x"), p("0")))
    grid = render_diagram(op)
    assert grid.splitlines() == ["XI IX", "XI ZI"]


def test_render_identity():
    assert render_diagram(PauliColumn.identity(2, 2)) == "II"


def test_render_rejects_dim4():
    with pytest.raises(ValueError):
        render_diagram(PauliColumn.identity(4, 1))


def test_render_cubic_letter_multiset():
    # one XX corner, one II corner, three XI, three IX in the X generator
    code = get_code("cubic")
    x_col = PauliColumn.from_entries(3, code.full_sigma().column(0))
    letters = [w for w in render_diagram(x_col).split() if not w.startswith("z=")]
    assert sorted(letters) == sorted(["XX", "II", "XI", "XI", "XI", "IX", "IX", "IX"])
    z_col = PauliColumn.from_entries(3, code.full_sigma().column(1))
    letters = [w for w in render_diagram(z_col).split() if not w.startswith("z=")]
    assert sorted(letters) == sorted(["ZZ", "II", "ZI", "ZI", "ZI", "IZ", "IZ", "IZ"])
