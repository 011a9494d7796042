import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gsdf.catalog import catalog_entry
from gsdf.family import family_from_blocks
from gsdf.verify import (back_circulant, build_gs_array, check_best_matrices,
                         check_difference_family, check_g_matrices,
                         check_good_matrices, check_gs_matrices, circulant,
                         hadamard_text, is_hadamard, is_skew_hadamard,
                         r_matrix, verify_family, write_hadamard)
from gsdf.zmod import CyclicSubset


def test_circulant_shapes():
    c = circulant([1, 2, 3])
    assert c.tolist() == [[1, 2, 3], [3, 1, 2], [2, 3, 1]]
    b = back_circulant([1, 2, 3])
    assert b.tolist() == [[1, 2, 3], [2, 3, 1], [3, 1, 2]]
    assert r_matrix(3).tolist() == [[0, 0, 1], [0, 1, 0], [1, 0, 0]]


def test_circulant_from_subset():
    c = circulant(CyclicSubset.from_elements(3, [1]))
    assert c.tolist() == [[1, -1, 1], [1, 1, -1], [-1, 1, 1]]


@given(st.integers(2, 12), st.integers(0, 1 << 12))
def test_circulant_r_identities(v, seed):
    row = [1 if seed >> i & 1 else -1 for i in range(v)]
    a, b, r = circulant(row), back_circulant(row), r_matrix(v)
    ar = a @ r
    assert np.array_equal(ar, ar.T)  # A R is symmetric for any circulant A
    rev = [row[(-m - 1) % v] for m in range(v)]
    assert np.array_equal(ar, back_circulant(rev))
    assert np.array_equal(b, b.T)
    assert np.array_equal(r @ a.T @ r, a)
    assert np.array_equal(r @ r, np.eye(v, dtype=np.int64))


def test_difference_family_check():
    fam = [CyclicSubset.from_elements(3, e) for e in ([1], [1], [1, 2])]
    fam.append(CyclicSubset(3, 0))
    check = check_difference_family(fam)
    assert check.ok and check.lam == 1 and check.sums == (1, 1)
    bad = [CyclicSubset.from_elements(5, [1, 2]), CyclicSubset(5, 0),
           CyclicSubset(5, 0), CyclicSubset(5, 0)]
    check = check_difference_family(bad)
    assert not check.ok and check.lam is None and check.sums == (1, 0, 0, 1)
    with pytest.raises(ValueError):
        check_difference_family([])


def test_gs_matrices_condition():
    fam = family_from_blocks(7, [[1, 2, 4]] * 3 + [[0]])
    assert check_gs_matrices(fam)
    # translating a block changes nothing
    assert check_gs_matrices(family_from_blocks(7, [[1, 2, 4]] * 3 + [[1]]))
    broken = family_from_blocks(7, [[1, 2, 4], [1, 2, 4], [1, 2, 3], [0]])
    assert not check_gs_matrices(broken)


def test_gs_array_hadamard():
    fam = family_from_blocks(7, [[1, 2, 4]] * 3 + [[0]])
    h = build_gs_array(fam)
    assert h.shape == (28, 28)
    assert is_hadamard(h)
    assert is_skew_hadamard(h)  # first block is skew


def test_gs_array_of_four_empty_blocks():
    fam = family_from_blocks(1, [[], [], [], []])
    h = build_gs_array(fam)
    assert h.shape == (4, 4) and is_hadamard(h)


def test_hadamard_negatives():
    assert not is_hadamard(np.ones((4, 4), dtype=np.int64))
    assert not is_hadamard(np.array([[1, 2], [2, 1]]))
    assert not is_hadamard(np.ones((2, 3)))
    h = build_gs_array(family_from_blocks(7, [[1, 2, 4]] * 3 + [[0]]))
    assert not is_skew_hadamard(-h)  # still Hadamard, not of skew type
    assert is_hadamard(-h)


def test_good_matrices():
    fam = family_from_blocks(3, [[1], [0], [0], []])
    assert fam.pattern == "ksss"
    assert check_good_matrices(fam)
    with pytest.raises(ValueError):
        check_good_matrices(family_from_blocks(7, [[1, 2, 4]] * 3 + [[0]]))
    assert check_good_matrices(catalog_entry("45-ksss-a").family)


def test_g_and_best_matrices():
    assert check_g_matrices(catalog_entry("33-kkss-a").family)
    assert check_best_matrices(catalog_entry("43-kkks-a").family)
    with pytest.raises(ValueError):
        check_g_matrices(catalog_entry("43-kkks-a").family)
    with pytest.raises(ValueError):
        check_best_matrices(catalog_entry("33-kkss-a").family)


def test_verify_family_certificate():
    cert = verify_family(catalog_entry("43-ksss-a").family)
    assert cert.ok and cert.diff.ok and cert.lam_matches
    assert cert.gs and cert.hadamard and cert.skew_type
    assert cert.special_name == "good" and cert.special
    bad = family_from_blocks(7, [[1, 2, 4], [1, 2, 4], [1, 2, 3], [0]])
    cert = verify_family(bad)
    assert not cert.ok and not cert.diff.ok


def test_hadamard_text_output(tmp_path):
    h = build_gs_array(family_from_blocks(3, [[1], [1], [1, 2], []]))
    text = hadamard_text(h)
    lines = text.splitlines()
    assert len(lines) == 12 and all(len(ln) == 12 for ln in lines)
    assert set("".join(lines)) <= {"+", "-"}
    path = tmp_path / "h.txt"
    write_hadamard(path, h)
    assert path.read_text() == text
    assert is_hadamard(h) and is_skew_hadamard(h)
