import itertools
import json

import pytest

from naive_oracle import naive_logical_count
from stabgauge.codebook import (
    code_from_dict,
    code_to_dict,
    codebook_names,
    dumps_code,
    generalized_toric,
    get_code,
    loads_code,
)
from stabgauge.pauli import canonical_column_set, verify_stabilizer
from stabgauge.torus import count_logical, shape_of

ALL_NAMES = ["toric2d", "cubic", "ising2d", "fractal_ising", "cluster_toric", "cluster_cubic"]


@pytest.mark.parametrize("name", ALL_NAMES)
def test_codebook_entries_commute(name):
    assert verify_stabilizer(get_code(name)).passed


@pytest.mark.parametrize("name", ALL_NAMES)
def test_json_round_trip_bit_exact(name):
    code = get_code(name)
    text = dumps_code(code)
    again = loads_code(text)
    assert again.full_sigma() == code.full_sigma()
    assert (again.name, again.dim, again.q_per_site, again.css) == (
        code.name, code.dim, code.q_per_site, code.css,
    )
    assert dumps_code(again) == text


def test_unknown_name_raises():
    with pytest.raises(KeyError):
        get_code("nope")


@pytest.mark.parametrize("d,k", [(2, 0), (2, 2), (3, 3), (1, 1), (4, 1)])
def test_generalized_toric_invalid_parameters(d, k):
    with pytest.raises(ValueError):
        generalized_toric(d, k)


@pytest.mark.parametrize("d,k", [(2, 1), (3, 1), (3, 2)])
def test_generalized_toric_commutes(d, k):
    assert verify_stabilizer(generalized_toric(d, k)).passed


def test_generalized_toric_21_equals_toric2d():
    gt = generalized_toric(2, 1)
    toric = get_code("toric2d")
    assert gt.q_per_site == 2
    # equality up to translation, column order and qubit-type relabeling
    def canon(code, perm):
        def permute(m):
            rows = tuple(m.entries[p] for p in perm)
            return type(m)(m.dim, rows)
        return (
            canonical_column_set(permute(code.sigma_x)),
            canonical_column_set(permute(code.sigma_z)),
        )

    target = canon(toric, (0, 1))
    assert any(canon(gt, perm) == target for perm in itertools.permutations(range(2)))


@pytest.mark.parametrize("L", [2, 3])
def test_generalized_toric_31_has_three_logical_qubits(L):
    code = generalized_toric(3, 1)
    lengths = (L, L, L)
    assert naive_logical_count(code, lengths) == 3
    assert count_logical(code, shape_of(lengths)).k_encoded == 3


def test_generalized_toric_32_counts_match_oracle():
    code = generalized_toric(3, 2)
    assert count_logical(code, shape_of((2, 2, 2))).k_encoded == naive_logical_count(
        code, (2, 2, 2)
    )


def test_codebook_names_lists_everything():
    names = codebook_names()
    for name in ALL_NAMES:
        assert name in names


def test_cluster_entries_are_mixed_sector():
    code = get_code("cluster_toric")
    data = code_to_dict(code)
    assert data["css"] is False
    gen = data["generators"][0]
    assert any(p for p in gen["x_block"]) and any(p for p in gen["z_block"])


def test_exponent_vector_length_checked():
    code = get_code("toric2d")
    data = code_to_dict(code)
    data["generators"][0]["x_block"][0] = [[1, 2, 3]]
    with pytest.raises(ValueError):
        code_from_dict(data)


def test_dump_is_valid_json():
    parsed = json.loads(dumps_code(get_code("cubic")))
    assert parsed["dim"] == 3 and parsed["q_per_site"] == 2
