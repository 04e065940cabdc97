from __future__ import annotations

import pytest

from foodn.errors import (
    ArityError,
    DoesNotExist,
    DuplicateName,
    KindMismatch,
    NameCollision,
    NotApplicable,
    ReflectionWarning,
    UnknownEndpoint,
    UnknownEntity,
    UnknownExploiter,
    UnknownModifier,
)
from foodn.model import (
    Absent,
    CrispNumber,
    Property,
    TruthDegree,
    define_class,
    define_object,
)
from foodn.modifiers import Change, define_modifier
from foodn.network import Network, Relation
from foodn.serialize import dumps


def small_network():
    net = Network()
    net.add(define_object("O1", [Property("p1", "Kind", CrispNumber(1.0))]))
    net.add(define_object("O2", [Property("p1", "Kind", CrispNumber(2.0))]))
    net.add(define_class("C1", [Property("p1", "Kind", CrispNumber(1.0))]))
    net.add(define_class("C2", [Property("p1", "Kind", Absent())]))
    return net


class TestConstruction:
    def test_duplicate_names_rejected(self):
        net = small_network()
        with pytest.raises(DuplicateName):
            net.add(define_object("O1", [Property("p1", "Kind", CrispNumber(9.0))]))
        with pytest.raises(DuplicateName):
            net.add(define_class("O1", [Property("p1", "Kind", Absent())]))

    def test_relation_endpoint_rules(self):
        net = small_network()
        net.add_relation("O1", "C1", "instance-of")
        net.add_relation("C1", "C2", "is-a")
        net.add_relation("C1", "C2", "a-kind-of")
        net.add_relation("O1", "O2", "association")
        with pytest.raises(KindMismatch, match="instance-of"):
            net.add_relation("C1", "C2", "instance-of")
        with pytest.raises(KindMismatch, match="is-a"):
            net.add_relation("O1", "O2", "is-a")
        with pytest.raises(KindMismatch, match="one kind"):
            net.add_relation("O1", "C1", "modification-of")
        with pytest.raises(KindMismatch, match="unknown relation kind"):
            net.add_relation("O1", "C1", "likes")

    def test_unknown_endpoint(self):
        net = small_network()
        with pytest.raises(UnknownEndpoint):
            net.add_relation("O1", "Nope", "association")

    def test_duplicate_relations(self):
        net = small_network()
        net.add_relation("O1", "C1", "instance-of", 0.8)
        net.add_relation("O1", "C1", "instance-of", 0.8)  # exact repeat: no-op
        assert len(net.relations) == 1
        with pytest.raises(DuplicateName, match="different degree"):
            net.add_relation("O1", "C1", "instance-of", 0.9)

    def test_graded_degree_bounds(self):
        net = small_network()
        with pytest.raises(Exception):
            net.add_relation("O1", "C1", "instance-of", 1.5)


class TestQueries:
    def test_is_fuzzy_witnesses(self, polygons):
        fuzzy, witnesses = polygons.is_fuzzy()
        assert fuzzy
        assert {w.name for w in witnesses} == {"Rb1", "Sq1", "T_Pg", "T_Rb", "T_Sq"}
        by_name = {w.name: w for w in witnesses}
        assert by_name["Rb1"].details == ("p2", "p6")
        assert by_name["Sq1"].details == ("p2",)
        assert by_name["T_Sq"].details == ("p2",)

    def test_crisp_network(self):
        net = small_network()
        assert net.is_fuzzy() == (False, [])
        net.add_relation("O1", "C1", "instance-of", 0.7)
        fuzzy, witnesses = net.is_fuzzy()
        assert fuzzy and witnesses[0].kind == "relation"
        assert witnesses[0].details == ("degree 0.7",)

    def test_graded_truth_makes_object_fuzzy(self):
        net = small_network()
        net.add(define_object("O3", [Property("p6", "Flag", TruthDegree(0.5))]))
        fuzzy, witnesses = net.is_fuzzy()
        assert fuzzy and witnesses[0].name == "O3"

    def test_membership(self, polygons):
        assert polygons.membership("Rb1", "T_Rb") == pytest.approx(0.8)
        assert polygons.membership("Sq1", "T_Sq") == 1.0
        assert polygons.membership("Sq1", "T_Rb") == 0.0
        with pytest.raises(UnknownEntity):
            polygons.membership("Nope", "T_Rb")
        with pytest.raises(UnknownEntity):
            polygons.membership("Rb1", "Nope")

    def test_query_related(self, polygons):
        assert polygons.query_related("Rb1", "instance-of") == ["T_Rb"]
        assert polygons.query_related("T_Pg", "a-kind-of", direction="in") == ["T_Rb", "T_Sq"]
        assert polygons.query_related("T_Sq", ("a-kind-of", "is-a"), transitive=True) == [
            "T_Pg", "T_Rb",
        ]

    def test_query_cycle_terminates(self):
        net = small_network()
        net.add_relation("O1", "O2", "association")
        net.add_relation("O2", "O1", "association")
        assert net.query_related("O1", "association", transitive=True) == ["O1", "O2"]

    def test_query_unknown_name(self):
        net = small_network()
        with pytest.raises(UnknownEndpoint):
            net.query_related("Nope", "association")
        with pytest.raises(KindMismatch):
            net.query_related("O1", "friends")

    def test_infer_relations(self):
        net = small_network()
        net.add_relation("O1", "C1", "instance-of")
        proposals = net.infer_relations()
        # O1-C1 exists already; O1 and O2 both satisfy the absent-only C2;
        # O2 does not match C1
        assert [(r.source, r.target) for r in proposals] == [("O1", "C2"), ("O2", "C2")]
        assert all(r.degree == 1.0 for r in proposals)
        assert len(net.relations) == 1  # proposals are not stored

    def test_infer_threshold(self, polygons):
        proposals = polygons.infer_relations(threshold=0.9)
        pairs = {(r.source, r.target) for r in proposals}
        assert ("Rb1", "T_Rb") not in pairs  # 0.8 is below the bar
        assert ("Sq1", "T_Rb") not in pairs  # membership 0


class TestExploiterApplication:
    def test_storage_and_provenance(self, polygons):
        name = polygons.apply_exploiter("intersection", ["T_Rb", "T_Sq"])
        assert name == "intersection_T_Rb_T_Sq"
        stored = polygons.entity(name)
        assert [p.id for p in stored.specification] == ["p1", "p2", "p3", "p5"]
        record = polygons.provenance[-1]
        assert record.op == "intersection"
        assert record.sources == ("T_Rb", "T_Sq")
        assert record.target == name

    def test_explicit_result_name(self, polygons):
        name = polygons.apply_exploiter("union", ["Rb1", "Sq1"], result_name="Shapes")
        assert name == "Shapes"
        assert polygons.entity("Shapes").extension == ("Rb1", "Sq1")

    def test_name_collision(self, polygons):
        with pytest.raises(NameCollision):
            polygons.apply_exploiter("intersection", ["T_Rb", "T_Sq"], result_name="T_Pg")

    def test_clone_picks_free_index(self, polygons):
        assert polygons.apply_exploiter("clone", ["Rb1"]) == "Rb1_clone1"
        assert polygons.apply_exploiter("clone", ["Rb1"]) == "Rb1_clone2"
        with pytest.raises(NameCollision):
            polygons.apply_exploiter("clone", ["Rb1"], index=1)

    def test_failed_exploiter_stores_nothing(self, disjoint):
        before = dumps(disjoint)
        with pytest.raises(DoesNotExist):
            disjoint.apply_exploiter("intersection", ["A", "B"])
        assert dumps(disjoint) == before

    def test_unknown_exploiter_and_arity(self, polygons):
        with pytest.raises(UnknownExploiter):
            polygons.apply_exploiter("complement", ["T_Rb"])
        with pytest.raises(ArityError):
            polygons.apply_exploiter("difference", ["T_Pg", "T_Rb", "T_Sq"])
        with pytest.raises(ArityError):
            polygons.apply_exploiter("clone", ["Rb1", "Sq1"])


class TestModifierApplication:
    def test_object_round_trip(self, polygons):
        original = polygons.entity("Sq1")
        first = polygons.apply_modifier("M1_Sq1", "Sq1")
        assert first == "Rb1_2"  # Rb1 is live, so the target name is suffixed
        assert "Sq1" in polygons.history and polygons.history["Sq1"] == "object"
        moved = polygons.entity("Rb1_2")
        assert moved.declared_class == "T_Rb"
        assert polygons.membership("Rb1_2", "T_Rb") == pytest.approx(0.8)

        second = polygons.apply_modifier("M2_Rb1", "Rb1_2")
        assert second == "Sq1"  # the retired name is free again
        restored = polygons.entity("Sq1")
        assert restored.specification == original.specification
        assert restored.signature == original.signature
        assert polygons.membership("Sq1", "T_Sq") == 1.0

    def test_class_round_trip(self, polygons):
        original = polygons.entity("T_Sq")
        polygons.apply_modifier("M1_T_Sq", "T_Sq")
        assert polygons.entity("T_Rb_2").get_property("p6").value == TruthDegree(0.8)
        assert polygons.apply_modifier("M2_T_Rb", "T_Rb_2") == "T_Sq"
        restored = polygons.entity("T_Sq")
        assert restored.specification == original.specification

    def test_modification_edge_and_provenance(self, polygons):
        count = len(polygons.provenance)
        polygons.apply_modifier("M1_Sq1", "Sq1")
        assert len(polygons.provenance) == count + 1
        record = polygons.provenance[-1]
        assert record.op == "M1_Sq1" and record.sources == ("Sq1",)
        assert Relation("Rb1_2", "Sq1", "modification-of") in polygons.relations
        # the retired name still resolves for queries
        assert polygons.query_related("Rb1_2", "modification-of") == ["Sq1"]
        assert polygons.query_related("Sq1", "modification-of", direction="in") == ["Rb1_2"]

    def test_not_applicable_reports_reasons(self, polygons):
        with pytest.raises(NotApplicable) as info:
            polygons.apply_modifier("M2_Rb1", "Sq1")  # expects rhombus angles
        assert any("p4" in reason for reason in info.value.reasons)

    def test_level_mismatch(self, polygons):
        with pytest.raises(NotApplicable, match="object-level"):
            polygons.apply_modifier("M1_Sq1", "T_Sq")

    def test_failed_application_is_atomic(self, polygons):
        before = dumps(polygons)
        with pytest.raises(NotApplicable):
            polygons.apply_modifier("M2_Rb1", "Sq1")
        assert dumps(polygons) == before

    def test_unknown_names(self, polygons):
        with pytest.raises(UnknownModifier):
            polygons.apply_modifier("M99", "Sq1")
        with pytest.raises(UnknownEntity):
            polygons.apply_modifier("M1_Sq1", "Nope")

    def test_name_blind_reapplication(self, polygons):
        # M1_T_Sq matches any class whose p6 is 1, not just one named T_Sq
        polygons.apply_modifier("M1_T_Sq", "T_Sq")
        polygons.apply_modifier("M2_T_Rb", "T_Rb_2")  # back to square content
        again = polygons.apply_modifier("M1_T_Sq", "T_Sq")
        assert polygons.entity(again).get_property("p6").value == TruthDegree(0.8)

    def test_reflection_warning(self):
        net = Network()
        net.add(define_class("Target", [Property("p1", "Kind", CrispNumber(5.0))]))
        net.add(define_object("O", [Property("p1", "Kind", CrispNumber(1.0))]))
        net.register_modifier(define_modifier(
            "M", "object", "O", "O_next",
            [Change("p1", CrispNumber(1.0), CrispNumber(2.0))],
            target_class="Target",
        ))
        with pytest.warns(ReflectionWarning, match="does not belong"):
            net.apply_modifier("M", "O")
        # the transformation itself still went through
        assert net.entity("O_next").get_property("p1").value == CrispNumber(2.0)

    def test_matching_target_class_warns_nothing(self, polygons):
        import warnings as w
        with w.catch_warnings():
            w.simplefilter("error")
            polygons.apply_modifier("M1_Sq1", "Sq1")
