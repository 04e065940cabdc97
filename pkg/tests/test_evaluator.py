from __future__ import annotations

import math

import pytest

from foodn.errors import UnknownMethod, UnresolvedBinding
from foodn.evaluator import eval_method, evaluate_method, resolve_binding
from foodn.fuzzy import FuzzySet, fs_equal, make_fuzzy_set
from foodn.model import (
    Binding,
    CrispNumber,
    CrispTuple,
    Fuzzy,
    FuzzyTuple,
    MethodDef,
    Property,
    TruthDegree,
    define_object,
)
from oracles import oracle_extend

SIDE = make_fuzzy_set([(1.8, 0.9), (2.0, 1.0), (2.1, 0.95)], unit="cm")


def polygon_like():
    return define_object("Rb1", [
        Property("p2", "Lengths of sides", FuzzyTuple((SIDE,) * 4)),
        Property("p3", "Number of sides", CrispNumber(4.0)),
        Property("p4", "Angles", CrispTuple((95.0, 85.0, 95.0, 85.0), "deg")),
        Property("p6", "Regularity", TruthDegree(0.8)),
        Property("p7", "Base", Fuzzy(SIDE)),
    ], [
        MethodDef("f1", "Perimeter", "4*a", (Binding("a", "p2", "component", 1),), "cm"),
        MethodDef("f1s", "Perimeter", "sum(a)", (Binding("a", "p2", "all"),), "cm"),
        MethodDef("f2", "Area", "a^2*sin(alpha)", (
            Binding("a", "p2", "component", 1),
            Binding("alpha", "p4", "component", 1),
        ), "cm^2"),
        MethodDef("g1", "Side count", "n", (Binding("n", "p2", "count"),)),
        MethodDef("g2", "Crisp arithmetic", "n*m", (
            Binding("n", "p3", "scalar"),
            Binding("m", "p4", "component", 2),
        )),
    ])


class TestResolveBinding:
    def test_scalar_variants(self):
        obj = polygon_like()
        assert resolve_binding(obj, Binding("n", "p3", "scalar")) == 4.0
        assert resolve_binding(obj, Binding("r", "p6", "scalar")) == 0.8
        assert resolve_binding(obj, Binding("b", "p7", "scalar")) is SIDE

    def test_component(self):
        obj = polygon_like()
        assert resolve_binding(obj, Binding("x", "p4", "component", 2)) == 85.0
        assert resolve_binding(obj, Binding("a", "p2", "component", 3)) is SIDE

    def test_all_and_count(self):
        obj = polygon_like()
        family = resolve_binding(obj, Binding("a", "p2", "all"))
        assert family == [SIDE] * 4
        assert resolve_binding(obj, Binding("n", "p2", "count")) == 4.0
        # a scalar forms a one-member family
        assert resolve_binding(obj, Binding("n", "p3", "all")) == [4.0]
        assert resolve_binding(obj, Binding("n", "p3", "count")) == 1.0

    def test_errors(self):
        obj = polygon_like()
        with pytest.raises(UnresolvedBinding, match="no property"):
            resolve_binding(obj, Binding("x", "p99", "scalar"))
        with pytest.raises(UnresolvedBinding, match="not a scalar"):
            resolve_binding(obj, Binding("x", "p2", "scalar"))
        with pytest.raises(UnresolvedBinding, match="out of range"):
            resolve_binding(obj, Binding("x", "p4", "component", 5))
        with pytest.raises(UnresolvedBinding, match="no components"):
            resolve_binding(obj, Binding("x", "p3", "component", 1))


class TestEvaluateMethod:
    def test_scaling(self):
        result = eval_method(polygon_like(), "f1")
        assert isinstance(result, FuzzySet)
        assert result.unit == "cm"
        assert result.elements == ((7.2, 0.9), (8.0, 1.0), (8.4, 0.95))

    def test_bound_once_is_one_quantity(self):
        # a*a over a three-point support: 9 raw combinations collapse to the
        # same outputs as a^2, because both mentions read the same slot
        obj = define_object("O", [Property("p", "Side", Fuzzy(SIDE))], [
            MethodDef("sq", "Area", "a*a", (Binding("a", "p", "scalar"),), "cm^2"),
            MethodDef("pw", "Area", "a^2", (Binding("a", "p", "scalar"),), "cm^2"),
        ])
        assert fs_equal(eval_method(obj, "sq"), eval_method(obj, "pw"))
        assert len(eval_method(obj, "sq").elements) == 3

    def test_family_members_vary_independently(self):
        # sum over four fuzzy sides enumerates 3^4 = 81 combinations
        result = eval_method(polygon_like(), "f1s")
        columns = [list(SIDE.elements)] * 4
        expected = oracle_extend(lambda *xs: sum(xs), columns, 1e-9)
        assert list(result.elements) == expected
        # wider support than scaling one side: sums like 1.8+2+2+2 appear
        assert len(result.elements) > 3

    def test_family_outside_sum_is_rejected(self):
        obj = define_object("O", [
            Property("p2", "Sides", FuzzyTuple((SIDE,) * 2)),
        ], [
            MethodDef("bad", "Broken", "a+1", (Binding("a", "p2", "all"),)),
        ])
        with pytest.raises(UnresolvedBinding, match="inside sum"):
            eval_method(obj, "bad")

    def test_crisp_inputs_give_float(self):
        assert eval_method(polygon_like(), "g1") == 4.0
        assert eval_method(polygon_like(), "g2") == 340.0

    def test_mixed_crisp_fuzzy(self):
        obj = polygon_like()
        result = eval_method(obj, "f2")
        expected = oracle_extend(
            lambda a, alpha: a ** 2 * math.sin(math.radians(alpha)),
            [list(SIDE.elements), [(95.0, 1.0)]], 1e-9,
        )
        assert result.unit == "cm^2"
        for (got_s, got_d), (want_s, want_d) in zip(result.elements, expected):
            assert got_s == pytest.approx(want_s, abs=1e-12)
            assert got_d == want_d

    def test_unknown_method(self):
        with pytest.raises(UnknownMethod):
            eval_method(polygon_like(), "zz")

    def test_standalone_method_on_entity(self):
        method = MethodDef("free", "Half base", "b/2", (Binding("b", "p7", "scalar"),), "cm")
        result = evaluate_method(polygon_like(), method)
        assert result.elements == ((0.9, 0.9), (1.0, 1.0), (1.05, 0.95))
