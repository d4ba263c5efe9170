import pytest

from dcfl_lab.automaton import Dpda, run, validate
from dcfl_lab.bounded import DpdaFamily, des, mu_bounded_member, pal_family, pal_machine_family
from dcfl_lab.normal_forms import check_ideal_shape


def sized(states, sigma, gamma, e):
    return Dpda(range(states), sigma, gamma, {}, 0, gamma[0], set(), set(), push_size=e)


def test_des_formula():
    assert des(sized(2, "ab", "ZA", 1)) == 12
    assert des(sized(2, "ab", "ZA", 0)) == 4
    assert des(sized(3, "ab", "ZA", 1)) > des(sized(2, "ab", "ZA", 1))
    assert des(sized(2, "ab", "ZAB", 1)) > des(sized(2, "ab", "ZA", 1))


def test_member_examples():
    fam = pal_machine_family()
    assert mu_bounded_member(fam, "0110")
    assert not mu_bounded_member(fam, "01")
    only_parity = DpdaFamily("parity", pal_family, mu=lambda n: 0)
    assert mu_bounded_member(only_parity, "01")


@pytest.mark.parametrize("n,word,expected", [(1, "00", True), (2, "0110", True), (1, "01", False),
                                             (2, "01", False), (0, "0", False)])
def test_family_machines(n, word, expected):
    assert run(pal_family(n), word).accepted is expected


def test_family_machines_are_valid_and_ideal():
    for n in range(10):
        m = pal_family(n)
        assert validate(m).ok
        assert check_ideal_shape(m).ok


def test_state_count_is_linear():
    sizes = [len(pal_family(n).states) for n in range(1, 12)]
    steps = {b - a for a, b in zip(sizes, sizes[1:])}
    assert len(steps) == 1
