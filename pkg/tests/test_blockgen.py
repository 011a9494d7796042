from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gsdf.blockgen import (RowFile, RowFileFormatError, collect_rows,
                           difference_counts, gen_skew, gen_symmetric,
                           psd_filter, read_row_file, skew_masks,
                           symmetric_masks, write_row_file)
from gsdf.zmod import CyclicSubset


@pytest.mark.parametrize("v", [3, 5, 7, 9, 11, 13])
def test_skew_generation_is_exhaustive(v):
    got = {x.mask for x in gen_skew(v)}
    assert len(got) == 2 ** ((v - 1) // 2)
    brute = {m for m in range(1 << v) if CyclicSubset(v, m).is_skew()}
    assert got == brute


@pytest.mark.parametrize("v", [3, 5, 7, 9, 11])
def test_symmetric_generation_is_exhaustive(v):
    for k in range(v + 1):
        got = {x.mask for x in gen_symmetric(v, k)}
        assert len(got) == comb((v - 1) // 2, k // 2)
        brute = {m for m in range(1 << v)
                 if CyclicSubset(v, m).is_symmetric() and m.bit_count() == k}
        assert got == brute


def test_symmetric_fixed_point_membership():
    for x in gen_symmetric(9, 3):
        assert 0 in x
    for x in gen_symmetric(9, 4):
        assert 0 not in x


def test_symmetric_example():
    assert [x.elements for x in gen_symmetric(7, 3)] == [
        (0, 3, 4), (0, 2, 5), (0, 1, 6)]


def test_skew_stream_closed_under_negation():
    masks = set(skew_masks(11).tolist())
    assert masks == {CyclicSubset(11, m).negate().mask for m in masks}


def test_difference_counts_match_scalar():
    rng = np.random.default_rng(5)
    for v in (7, 13, 21):
        masks = rng.integers(0, 1 << v, size=50).astype(np.int64)
        rows = difference_counts(masks, v)
        for m, row in zip(masks, rows):
            assert tuple(int(c) for c in row) == CyclicSubset(v, int(m)).difference_row().counts


def test_psd_filter_examples():
    assert psd_filter(CyclicSubset.from_elements(7, [1, 2, 4]), 28)
    # symmetric block at v=25 with spectrum far above the solution bound 4v=100
    hot = CyclicSubset.from_elements(25, range(7, 19))
    assert hot.is_symmetric()
    assert float(hot.psd()[1:].max()) == pytest.approx(253.6365557936, abs=1e-6)
    assert not psd_filter(hot, 100)
    assert psd_filter(hot, 260)


FILTER_PINS = {
    (13, 6, "skew"): (40, 64),
    (25, 12, "skew"): (1940, 4096),
    (25, 12, "symmetric"): (370, 924),
    (25, 9, "symmetric"): (300, 495),
    (21, 10, "skew"): (576, 1024),
    (21, 6, "symmetric"): (98, 120),
}


@pytest.mark.parametrize("key", sorted(FILTER_PINS))
def test_collect_rows_sizes(key):
    v, k, kind = key
    filtered, unfiltered = FILTER_PINS[key]
    assert len(collect_rows(v, k, kind, filtered=True)) == filtered
    assert len(collect_rows(v, k, kind, filtered=False)) == unfiltered


def test_collect_rows_is_sorted_and_consistent():
    rf = collect_rows(13, 6, "skew")
    assert (np.diff(rf.masks) > 0).all()
    entry = rf[0]
    assert entry.row == entry.block.difference_row()
    assert rf.bound == 4 * 13
    assert collect_rows(13, 6, "skew", filtered=False).bound is None


def test_collect_rows_argument_errors():
    with pytest.raises(ValueError):
        collect_rows(13, 5, "skew")  # skew size must be (v-1)/2
    with pytest.raises(ValueError):
        collect_rows(13, 5, "banana")
    with pytest.raises(ValueError):
        collect_rows(12, 5, "symmetric")


def test_row_file_round_trip(tmp_path):
    rf = collect_rows(13, 4, "symmetric")
    path = tmp_path / "rows.txt"
    write_row_file(path, rf)
    back = read_row_file(path)
    assert (back.v, back.k, back.kind, back.bound) == (rf.v, rf.k, rf.kind, rf.bound)
    assert np.array_equal(back.masks, rf.masks)
    assert np.array_equal(back.rows, rf.rows)


def test_row_file_round_trip_unfiltered_empty_block(tmp_path):
    rf = collect_rows(3, 0, "symmetric", filtered=False)
    path = tmp_path / "rows.txt"
    write_row_file(path, rf)
    back = read_row_file(path)
    assert len(back) == 1 and back.masks[0] == 0
    assert back.bound is None


@pytest.mark.parametrize("mutate,message", [
    (lambda ls: [ls[0].replace("skew", "weird")] + ls[1:], "kind"),
    (lambda ls: [ls[0]] + [ls[1].replace("|", " ")], "separator"),
    (lambda ls: [ls[0], ls[2], ls[1]] + ls[3:], "sorted"),
    (lambda ls: [ls[0]] + ["1,2|9 9 9 9 9 9"] + ls[2:], "counts"),
    (lambda ls: ["13 6"] + ls[1:], "header"),
])
def test_row_file_rejects_corruption(tmp_path, mutate, message):
    rf = collect_rows(13, 6, "skew")
    path = tmp_path / "rows.txt"
    write_row_file(path, rf)
    lines = path.read_text().splitlines()
    path.write_text("\n".join(mutate(lines)) + "\n")
    with pytest.raises(RowFileFormatError):
        read_row_file(path)


@settings(max_examples=30)
@given(st.integers(1, 7).map(lambda n: 2 * n + 1), st.data())
def test_generated_blocks_have_declared_symmetry(v, data):
    k = data.draw(st.integers(0, (v - 1) // 2))
    for x in gen_symmetric(v, k):
        assert x.is_symmetric() and len(x) == k
    for i, x in enumerate(gen_skew(v)):
        assert x.is_skew()
        if i > 40:
            break
