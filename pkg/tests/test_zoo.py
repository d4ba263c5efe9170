import pytest

from dcfl_lab.errors import UnsupportedParams
from dcfl_lab.languages import DpdaLeaf, Union, arity, member
from dcfl_lab.machines import power_machine
from dcfl_lab.zoo import (all_strings, block_order, build_entry, cross_validate, hibbard_quadruple,
                          pred_form, pred_hibbard, pred_hibbard_literal, pred_mpal,
                          pred_npal, pred_npal_hash, pred_odd, pred_pal, witness_family,
                          witness_strings)


def test_examples():
    abc = build_entry("L_abc")
    assert "aabbcc" in abc and "aabbc" not in abc
    union = build_entry("L_(d)", {"d": 2})
    assert "abb" in union and "abbb" not in union
    assert "ab#ab" in build_entry("L_k", {"k": 2})


def test_unsupported_params():
    with pytest.raises(UnsupportedParams):
        build_entry("L_d", {"d": 5})
    with pytest.raises(UnsupportedParams):
        build_entry("L_k", {"k": 5})
    with pytest.raises(UnsupportedParams):
        build_entry("nope")


def test_small_cross_validations():
    assert cross_validate(build_entry("L_(d)", {"d": 2}), 8).ok
    assert cross_validate(build_entry("L_d_le", {"d": 2}), 6).ok


def test_corrupted_machine_is_caught():
    entry = build_entry("L_(d)", {"d": 2})
    entry.spec = Union([DpdaLeaf(power_machine(1)), DpdaLeaf(power_machine(3))])
    rep = cross_validate(entry, 8)
    assert not rep.ok and rep.disagreements


def test_arities():
    for d in (2, 3):
        assert arity(build_entry("L_(d)", {"d": d}).spec).d == d
    for k in (2, 3):
        a = arity(build_entry("L_k", {"k": k}).spec)
        assert a.kind == "union" and a.d == 2 ** (k - 1)


def test_witness_families():
    fam = witness_family("L_(d)", {"d": 2, "n": 5})
    assert fam.x == "a" * 5 and fam.ys == ["b" * 5, "b" * 10]
    assert witness_strings("Pal", {"n": 4, "d": 1})[0] == "000011110000"
    assert hibbard_quadruple(3)[3] == "aaabbcc"


@pytest.mark.parametrize("name,params", [("L_(d)", {"d": 3}), ("L_d_le_prime", {"d": 2}),
                                         ("NPal#_d_prime", {"d": 2}), ("Pal", {"d": 2}),
                                         ("L_k", {"k": 2}), ("L_k", {"k": 3})])
def test_witness_strings_are_members(name, params):
    entry = build_entry(name, params)
    for s in witness_strings(name, {**params, "n": 4}):
        assert entry.predicate(s), s


def test_set_identities():
    for w in all_strings("01", 8):
        assert (not pred_pal(w)) == (pred_odd(w) or (not pred_odd(w) and pred_npal(w)))
    for w in all_strings("01#", 7):
        assert pred_npal_hash(w) == (pred_form(w) and not pred_mpal(w))


def test_block_order():
    assert block_order(3) == [2, 3, 1]
    assert block_order(4) == [2, 4, 3, 1]


def test_literal_conditions_disagree_with_the_displayed_form():
    # "#ab" fits the displayed two-block form with n_2 = m_2 = 0 and n_1 = m_1 = 1,
    # but the literal conditions reject it; the recursion is used throughout
    assert pred_hibbard(2)("#ab")
    assert not pred_hibbard_literal(2)("#ab")


def test_primed_and_plain_hibbard_differ():
    plain, primed = build_entry("L_k", {"k": 2}), build_entry("L'_k", {"k": 2})
    diff = [w for w in all_strings("abc#", 5) if (w in plain) != (w in primed)]
    assert diff
    for w in diff[:20]:
        assert member(plain.spec, w) == (w in plain)
