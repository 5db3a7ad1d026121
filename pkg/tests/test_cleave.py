"""Tests for cleave steps, decomposition trees, and Gorenstein reduction."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invpoly.cleave import (
    CASE_A,
    CASE_B,
    CASE_C,
    CleaveNode,
    FermatLeaf,
    TensorNode,
    augment,
    cleave_step,
    decompose,
    gorenstein_reduce,
    tree_dot,
)
from invpoly.core import (
    CHAIN,
    FERMAT,
    LOOP,
    Atom,
    ExponentMatrix,
    from_atoms,
    thom_sebastiani,
)
from invpoly.errors import (
    BadBError,
    FermatNotAugmentableError,
    StrategyError,
)
from invpoly.milnor import milnor_of_transpose


def M(*rows):
    return ExponentMatrix(tuple(tuple(r) for r in rows))


def loop(*a):
    return Atom(LOOP, tuple(a), tuple(range(1, len(a) + 1)))


def chain(*a):
    kind = CHAIN if len(a) > 1 else FERMAT
    return Atom(kind, tuple(a), tuple(range(1, len(a) + 1)))


class TestAugment:
    def test_reference_values(self):
        assert augment(loop(2, 2), 2) == M([2, 1, 0], [1, 2, 2])
        assert augment(chain(2, 2), 2) == M([2, 1, 0], [0, 2, 2])
        assert augment(Atom(CHAIN, (3,), (1,)), 4) == M([3, 4])

    def test_fermat_rejected(self):
        with pytest.raises(FermatNotAugmentableError):
            augment(Atom(FERMAT, (5,), (1,)), 2)

    def test_small_b_rejected(self):
        with pytest.raises(BadBError):
            augment(loop(2, 2), 1)


class TestCleaveStep:
    def test_loop_2_2(self):
        step = cleave_step(loop(2, 2), 2)
        assert step.w_minus.atoms == (Atom(CHAIN, (2, 2), (1, 2)),)
        assert step.minus_labels == (3, 1)
        assert step.vgit.sum_d == 1
        assert (step.t, step.case) == (1, CASE_C)
        assert (step.mu_plus, step.mu_minus) == (4, 3)

    def test_chain_2_2(self):
        step = cleave_step(chain(2, 2), 2)
        assert step.w_minus.atoms == (
            Atom(FERMAT, (2,), (1,)),
            Atom(FERMAT, (2,), (2,)),
        )
        assert step.minus_labels == (1, 3)
        assert step.vgit.sum_d == 2
        assert (step.t, step.case) == (2, CASE_C)
        assert (step.mu_plus, step.mu_minus) == (3, 1)

    def test_chain_2_2_balanced(self):
        step = cleave_step(chain(2, 2), 4)
        assert step.w_minus.atoms == (
            Atom(FERMAT, (2,), (1,)),
            Atom(FERMAT, (4,), (2,)),
        )
        assert step.vgit.sum_d == 0
        assert (step.t, step.case) == (0, CASE_B)
        assert (step.mu_plus, step.mu_minus) == (3, 3)

    def test_case_a(self):
        step = cleave_step(Atom(CHAIN, (3,), (1,)), 4)
        assert step.vgit.sum_d == -1
        assert (step.t, step.case) == (1, CASE_A)
        assert (step.mu_plus, step.mu_minus) == (2, 3)

    def test_longer_loop(self):
        step = cleave_step(loop(2, 3, 4), 3)
        assert step.w_minus.atoms == (Atom(CHAIN, (3, 2, 3), (1, 2, 3)),)
        assert step.minus_labels == (4, 1, 2)

    def test_sign_partition(self):
        step = cleave_step(loop(2, 2), 2)
        assert step.vgit.c == (2, -4, 3)
        assert step.i_plus == (1, 3)
        assert step.i_minus == (2,)

    def test_json(self):
        d = cleave_step(chain(2, 2), 2).to_dict()
        assert d["w_plus"] == "x1^2*x2 + x2^2"
        assert d["w_minus"] == "x1^2 + x2^2"
        assert d["b"] == 2
        assert d["case"] == "C"
        assert d["t"] == 2
        assert d["minus_variables"] == [1, 3]
        assert d["vgit"]["d"] == [2, -4, 4]

    @given(
        st.sampled_from([LOOP, CHAIN]),
        st.lists(st.integers(2, 4), min_size=2, max_size=4),
        st.integers(0, 4),
    )
    @settings(max_examples=120, deadline=None)
    def test_milnor_identity(self, kind, exps, b_off):
        atom = Atom(kind, tuple(exps), tuple(range(1, len(exps) + 1)))
        b = 2 + b_off  # covers [2, a_n + 2] since a_n <= 4
        step = cleave_step(atom, b)  # raises IdentityViolated on failure
        assert step.mu_plus - step.mu_minus == step.vgit.sum_d
        assert step.t == abs(step.vgit.sum_d)
        if b <= atom.exponents[-1]:
            if kind == LOOP:
                assert step.case == CASE_C
            else:
                assert step.case in (CASE_B, CASE_C)


class TestDecompose:
    def test_loop_2_2(self):
        tree = decompose(M([2, 1], [1, 2]))
        assert tree.total_exceptionals == 4
        assert isinstance(tree.node, CleaveNode)
        assert tree.node.step.t == 1
        inner = tree.node.child
        assert isinstance(inner, CleaveNode)
        assert inner.step.t == 2
        pair = inner.child
        assert isinstance(pair, TensorNode)
        assert [leaf.total for leaf in pair.children] == [1, 1]

    def test_chain_2_2(self):
        tree = decompose(M([2, 1], [0, 2]))
        assert tree.total_exceptionals == 3
        assert tree.node.step.t == 2
        assert tree.node.child.total == 1

    def test_fermat(self):
        tree = decompose(M([5]))
        assert isinstance(tree.node, FermatLeaf)
        assert tree.total_exceptionals == 4

    def test_strategies_agree_on_total(self):
        m = M([2, 1], [1, 2])  # loop(2,2), a Gorenstein case
        totals = {
            s: decompose(m, s).total_exceptionals
            for s in ("min", "max", "gorenstein", 2)
        }
        assert set(totals.values()) == {4}

    def test_gorenstein_strategy_rejects_non_gorenstein(self):
        with pytest.raises(StrategyError):
            decompose(M([2, 1], [1, 3]), "gorenstein")

    def test_oversized_fixed_b_rejected(self):
        with pytest.raises(StrategyError):
            decompose(M([2, 1], [0, 2]), 5)

    def test_unknown_strategy(self):
        with pytest.raises(StrategyError):
            decompose(M([5]), "fastest")

    def test_json_shape(self):
        d = decompose(M([2, 1], [1, 2])).to_dict()
        assert d["polynomial"] == "x1^2*x2 + x1*x2^2"
        assert d["total_exceptionals"] == 4
        node = d["tree"]
        assert node["kind"] == "cleave"
        assert node["b"] == 2 and node["t"] == 1 and node["case"] == "C"
        assert node["child"]["kind"] == "cleave"
        assert node["child"]["child"]["kind"] == "tensor"
        leaves = node["child"]["child"]["children"]
        assert [leaf["kind"] for leaf in leaves] == ["fermat", "fermat"]

    def test_dot_output(self):
        dot = tree_dot(decompose(M([2, 1], [1, 2])))
        assert dot.startswith("digraph decomposition {")
        assert dot.rstrip().endswith("}")
        assert '[label="t = 1"]' in dot
        assert '[label="t = 2"]' in dot
        assert "x1^2*x2 + x2^2*x1" in dot

    @given(
        st.lists(
            st.tuples(
                st.sampled_from([FERMAT, CHAIN, LOOP]),
                st.lists(st.integers(2, 4), min_size=1, max_size=3),
            ),
            min_size=1,
            max_size=2,
        ),
        st.sampled_from(["min", "max"]),
    )
    @settings(max_examples=60, deadline=None)
    def test_total_is_transpose_milnor(self, shapes, strategy):
        atoms = []
        v = 1
        for kind, exps in shapes:
            if kind == FERMAT:
                exps = exps[:1]
            elif kind == LOOP and len(exps) < 2:
                exps = exps + [2]
            atoms.append(
                Atom(kind, tuple(exps), tuple(range(v, v + len(exps))))
            )
            v += len(exps)
        m = from_atoms(atoms).matrix()
        tree = decompose(m, strategy)
        assert tree.total_exceptionals == milnor_of_transpose(m)


class TestGorensteinReduce:
    def test_loop_2_2(self):
        report = gorenstein_reduce(M([2, 1], [1, 2]))
        assert report.gorenstein and report.tilting
        assert report.transpose_weights == (1, 1)
        assert report.transpose_degree == 3
        assert [step.b for step in report.steps] == [3, 3]
        assert all(step.vgit.sum_d == 0 for step in report.steps)
        assert all(step.case == CASE_B for step in report.steps)
        assert report.steps[0].w_minus.atoms[0] == Atom(CHAIN, (3, 2), (1, 2))
        assert report.terminal == (3, 3)

    def test_chain_2_2(self):
        report = gorenstein_reduce(M([2, 1], [0, 2]))
        assert report.gorenstein and report.tilting
        assert report.transpose_weights == (2, 1)
        assert report.transpose_degree == 4
        assert [step.b for step in report.steps] == [4]
        assert report.terminal == (2, 4)

    def test_loop_2_3_not_gorenstein(self):
        report = gorenstein_reduce(M([2, 1], [1, 3]))
        assert not report.gorenstein
        assert not report.tilting
        assert report.steps == ()
        assert report.terminal == ()
        assert report.transpose_weights == (2, 1)
        assert report.transpose_degree == 5

    def test_fermat_sum_is_fixed_point(self):
        report = gorenstein_reduce(M([3, 0], [0, 3]))
        assert report.gorenstein
        assert report.steps == ()
        assert report.terminal == (3, 3)

    def test_multi_atom(self):
        m = thom_sebastiani(M([2, 1], [1, 2]), M([2, 1], [0, 2]))
        report = gorenstein_reduce(m)
        assert report.gorenstein
        assert report.transpose_degree == 12
        assert report.transpose_weights == (4, 4, 6, 3)
        assert report.terminal == (3, 3, 2, 4)
        assert len(report.steps) == 3

    def test_milnor_conserved(self):
        for m in [M([2, 1], [1, 2]), M([2, 1], [0, 2]), M([3, 1], [1, 3])]:
            report = gorenstein_reduce(m)
            assert report.gorenstein
            mu = milnor_of_transpose(m)
            assert all(step.mu_plus == step.mu_minus for step in report.steps)
            assert math.prod(e - 1 for e in report.terminal) == mu

    def test_json(self):
        d = gorenstein_reduce(M([2, 1], [0, 2])).to_dict()
        assert d["gorenstein"] is True
        assert d["tilting"] is True
        assert d["transpose_weights"] == [2, 1]
        assert d["transpose_degree"] == 4
        assert d["terminal"] == [2, 4]
        assert len(d["steps"]) == 1 and d["steps"][0]["b"] == 4
