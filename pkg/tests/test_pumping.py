import pytest

from dcfl_lab.errors import PreconditionError
from dcfl_lab.pumping import (FAILS, HOLDS, Lemma1Instance, condition1_space,
                              enumerate_condition1, lemma1_witness_search, lemma2_check,
                              npal_split, union_witness_splits, pumping_constant_upper_bound,
                              refute_pinned, search_condition1, search_condition2)
from dcfl_lab.zoo import build_entry, pred_anbn


def test_condition1_finds_a_window_pair():
    wit = search_condition1(pred_anbn, "aaaaabb", "bbb", "bbb", 4, 3).witness
    assert wit.which == "L1C1"
    f = wit.factorizations["x'y"]
    assert f.x == "a" and f.y == "b"
    assert len(f.x + f.v + f.y) <= 4


def test_condition1_count_matches_closed_form():
    res = search_condition1(pred_anbn, "aaaaabb", "bbb", "bbb", 4, 3, find_all=True)
    assert res.examined == condition1_space(7, 4) == sum(1 for _ in enumerate_condition1(7, 4))


def test_condition2_finds_single_symbol_pumps():
    wit = search_condition2(pred_anbn, "aaaaa", "bbbbb", "bbbbb", 4, 3).witness
    assert wit.which == "L1C2"
    fy, fz = wit.factorizations["x'y"], wit.factorizations["x'z"]
    assert (fy.x, fy.y, fz.y) == ("a", "b", "b")


def test_short_prefix_is_refused():
    with pytest.raises(PreconditionError):
        search_condition1(pred_anbn, "aab", "b", "b", 4, 3)


def test_union_witness_splits_admit_nothing():
    spec = build_entry("L_(d)", {"d": 2}).spec
    res = refute_pinned(spec, union_witness_splits(2, 5), 4, 3)
    assert res.valid_factorizations == 0
    assert res.condition1.examined > 0 and res.condition2.examined > 0


def test_union_as_two_union_has_a_witness():
    spec = build_entry("L_(d)", {"d": 2}).spec
    hit = lemma1_witness_search(Lemma1Instance(spec, 4, "a" * 5, ["b" * 5, "b" * 10], 3))
    assert hit is not None and hit[:2] == (1, 2)


def test_single_language_two_strings():
    hit = lemma1_witness_search(Lemma1Instance(pred_anbn, 4, "a" * 6, ["b" * 6, "a" + "b" * 7], 3))
    assert hit is not None


def test_empty_suffix_is_refused():
    with pytest.raises(PreconditionError):
        lemma1_witness_search(Lemma1Instance(pred_anbn, 4, "a" * 6, ["b" * 6, ""], 3))


def test_npal_refutation_report():
    entry = build_entry("NPal#_d_prime", {"d": 2})
    xp, y, z = npal_split(2, 3, 1, 2, ["001", "011"], ["010", "110"])
    rep = lemma2_check(entry, xp, y, z)
    assert set(rep.verdicts) == {"1", "2", "3", "4a", "4b", "4c", "5a", "5b"}
    assert all(v == FAILS for v in rep.verdicts.values())


def test_condition2_holds_with_a_pair_inside_the_prefix():
    def lang(w):
        # a^n b^n followed by one or more c's
        head = w.rstrip("c")
        return len(head) < len(w) and pred_anbn(head)
    rep = lemma2_check(lang, "aaabbb", "c", "cc")
    assert rep.verdicts["2"] == HOLDS


def test_empty_y_is_refused():
    with pytest.raises(PreconditionError):
        lemma2_check(pred_anbn, "aabb", "", "ab")


def test_pumping_constant_bound():
    assert pumping_constant_upper_bound(1) == 64
    assert pumping_constant_upper_bound(2) == 2 ** 384
    assert pumping_constant_upper_bound(3) > pumping_constant_upper_bound(2)
