import pytest

from memauto.automata import validate
from memauto.core import parse_word
from memauto.corpus import double_exp, double_exp_witness, example, fig2_lp, fig3_hra, halved_witness
from memauto.errors import UsageError
from memauto.membership import decide_membership


def test_examples_valid():
    for name in ("fig2_lp", "fig3_hra", "double_exp(3)", "double_exp(5)"):
        assert validate(example(name)) == []
    assert example("double_exp", 4) == double_exp(4)
    with pytest.raises(UsageError):
        example("fig9")
    with pytest.raises(UsageError):
        double_exp(2)


def test_fig2_shape():
    F = fig2_lp()
    assert len(F.states) == 6 and F.finals == set(F.states)
    assert len(F.observable_transitions) == 6


def test_fig3_examples():
    H = fig3_hra()
    assert not decide_membership(H, parse_word("a b")).accepted
    assert decide_membership(H, parse_word("a b a")).accepted is False
    assert decide_membership(H, parse_word("a b b")).accepted


def test_double_exp_shape():
    A = double_exp(3)
    assert A.layers == 3
    assert any(v.name == "A" and v.layer == 3 for v in A.variables)
    assert len(double_exp(5).states) == 12


@pytest.mark.parametrize("n", [3, 4])
def test_double_exp_witness(n):
    w = double_exp_witness(n)
    assert len({u for u in w if u.startswith("u")}) == 2 ** (2 ** (n - 2))
    assert decide_membership(double_exp(n), w).accepted


def test_halved_rejected():
    assert len({u for u in halved_witness(3) if u.startswith("u")}) == 2
    assert not decide_membership(double_exp(3), halved_witness(3)).accepted
    assert not decide_membership(double_exp(4), halved_witness(4)).accepted


def test_witness_range():
    with pytest.raises(UsageError):
        double_exp_witness(6)
