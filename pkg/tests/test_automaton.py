import json

import pytest

from dcfl_lab.automaton import (EPS, LEFT, RIGHT, Dpda, complement, load_machine,
                                machine_to_dict, run, validate)
from dcfl_lab.errors import BudgetExhausted, InvalidMachine
from dcfl_lab.languages import (Complement, DpdaLeaf, Intersection, Union, arity, complement_spec, empty_dfa,
                                member, restrict_regular, sequence_dfa, universal_dfa)
from dcfl_lab.machines import anbn
from dcfl_lab.zoo import all_strings, build_entry, pred_anbn, pred_ld_le, zoo_machines


def one_state_machine():
    delta = {("q0", s, "Z"): ("q0", "Z") for s in ("a", "b", LEFT)}
    delta[("q0", RIGHT, "Z")] = ("acc", "Z")
    return Dpda({"q0", "acc", "rej"}, "ab", {"Z"}, delta, "q0", "Z", {"acc"}, {"rej"})


def test_minimal_machine_is_valid():
    assert validate(one_state_machine()).ok


def test_both_branches_is_a_determinism_violation():
    m = one_state_machine()
    m.transitions[("q0", EPS, "Z")] = ("q0", "Z")
    assert "determinism" in validate(m).kinds()


def test_popping_the_bottom_marker_is_reported():
    m = one_state_machine()
    m.transitions[("q0", "a", "Z")] = ("q0", "")
    assert "bottom" in validate(m).kinds()


def test_overlong_push_is_reported():
    m = one_state_machine()
    m.push_size = 1
    m.stack_alphabet = frozenset({"Z", "A"})
    m.transitions[("q0", "a", "Z")] = ("q0", "AAZ")
    assert "push-size" in validate(m).kinds()


@pytest.mark.parametrize("word,expected", [("aabb", True), ("", True), ("aab", False)])
def test_anbn_runs(word, expected):
    assert run(anbn(), word).accepted is expected


def test_run_is_deterministic():
    m = anbn()
    assert run(m, "aaabbb").trace == run(m, "aaabbb").trace


def test_budget_exhaustion():
    with pytest.raises(BudgetExhausted):
        run(anbn(), "aaaabbbb", step_budget=3)


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv("DCFL_LAB_BUDGET", "2")
    with pytest.raises(BudgetExhausted):
        run(anbn(), "ab")


def test_complement_examples():
    co = complement(anbn())
    assert not run(co, "aabb").accepted
    assert run(co, "aba").accepted


def test_complement_is_an_involution_and_sound():
    for _, m in zoo_machines()[:6]:
        co = complement(m)
        cc = complement(co)
        alphabet = sorted(m.input_alphabet)[:2]
        for w in all_strings(alphabet, 8):
            a = run(m, w, trace=False).accepted
            assert run(co, w, trace=False).accepted is not a
            assert run(cc, w, trace=False).accepted is a


def test_member_examples():
    abc = build_entry("L_abc").spec
    assert member(abc, "abc")
    assert not member(abc, "aabc")
    assert member(build_entry("L_(d)", {"d": 2}).spec, "abb")


def test_de_morgan_on_specs():
    a = DpdaLeaf(anbn())
    b = DpdaLeaf(complement(anbn()), name="co")
    lhs = Complement(Union([a, b]))
    rhs = Intersection([Complement(a), Complement(b)])
    for w in all_strings("ab", 8):
        assert member(lhs, w) == member(rhs, w)


def test_restrict_by_universal_keeps_arity_and_membership():
    spec = build_entry("L_(d)", {"d": 2}).spec
    out = restrict_regular(spec, universal_dfa("ab"), "intersect")
    assert arity(out) == arity(spec)
    assert str(arity(out)) == "2-union"
    for w in all_strings("ab", 8):
        assert member(out, w) == member(spec, w)


def test_union_with_empty_dfa_is_identity():
    spec = build_entry("L_(d)", {"d": 2}).spec
    out = restrict_regular(spec, empty_dfa("ab"), "union")
    for w in all_strings("ab", 8):
        assert member(out, w) == member(spec, w)


def test_complement_of_le_restricted_to_shape():
    # A ∩ complement(L_2^(<=)) against "some n_i > m_i" inside a_1*..b_d*
    le = build_entry("L_d_le", {"d": 2})
    shape = sequence_dfa(le.alphabet, list("abAB"))
    spec = restrict_regular(complement_spec(le.spec), shape, "intersect")
    assert str(arity(spec)) == "2-union"
    le_pred = pred_ld_le(2)
    for w in all_strings(le.alphabet, 8):
        want = shape.accepts(w) and not le_pred(w)
        assert member(spec, w) == want


def test_loader_refuses_invalid_files(tmp_path):
    data = machine_to_dict(anbn())
    data["transitions"] = data["transitions"][1:]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    with pytest.raises(InvalidMachine):
        load_machine(path)


def test_loader_round_trip(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps(machine_to_dict(anbn()), ensure_ascii=False))
    m = load_machine(path)
    for w in all_strings("ab", 8):
        assert run(m, w, trace=False).accepted == pred_anbn(w)
