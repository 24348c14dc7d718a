"""Shared DAO conformance suite; every case runs on both backends.

Covers get/save/delete/reset, the three proposition getters, cascading
saves, conflicting definitions, and dependency-protected deletes.
"""

import dataclasses

import pytest

from kantkb.documents import snapshot
from kantkb.errors import ConflictingDefinition, DependentsExist
from kantkb.model import (
    EntityKind,
    PddlAction,
    PddlConditionEffect,
    PddlObject,
    PddlPredicate,
    PddlProposition,
    PddlType,
    TimeSpecifier,
)

from kbgen import load_nav, nav_entities


def names(entities):
    return sorted(e.name for e in entities)


class TestGetAndSave:
    def test_get_absent_returns_none(self, family):
        assert family.get(EntityKind.TYPE, "ghost") is None

    def test_save_then_get_type(self, family):
        family.save(PddlType("robot"))
        assert family.get(EntityKind.TYPE, "robot") == PddlType("robot")

    def test_save_returns_true_and_upsert_is_idempotent(self, family):
        assert family.save(PddlType("robot"))
        assert family.save(PddlType("robot"))
        assert names(family.get_all(EntityKind.TYPE)) == ["robot"]

    def test_get_is_case_insensitive(self, family):
        family.save(PddlType("Robot"))
        assert family.get(EntityKind.TYPE, "ROBOT") == PddlType("robot")

    def test_get_by_string_kind(self, family):
        family.save(PddlType("robot"))
        assert family.get("type", "robot") == PddlType("robot")

    def test_get_propositions_by_name_is_rejected(self, family):
        with pytest.raises(ValueError):
            family.get(EntityKind.PROPOSITION, "anything")
        with pytest.raises(ValueError):
            family.proposition_dao.get("anything")

    def test_save_object_cascades_type(self, family):
        nav = nav_entities()
        family.save(nav["rb1"])
        assert family.get(EntityKind.TYPE, "robot") == nav["robot"]

    def test_get_object_carries_its_type(self, family):
        nav = nav_entities()
        family.save(nav["rb1"])
        stored = family.get(EntityKind.OBJECT, "rb1")
        assert stored == nav["rb1"] and stored.type.name == "robot"

    def test_save_predicate_cascades_parameter_types(self, family):
        nav = nav_entities()
        family.save(nav["robot_at"])
        assert names(family.get_all(EntityKind.TYPE)) == ["robot", "wp"]

    def test_save_proposition_cascades_everything(self, family):
        nav = nav_entities()
        family.save(nav["at_wp1"])
        assert names(family.get_all(EntityKind.TYPE)) == ["robot", "wp"]
        assert names(family.get_all(EntityKind.OBJECT)) == ["rb1", "wp1"]
        assert names(family.get_all(EntityKind.PREDICATE)) == ["robot_at"]
        assert len(family.get_all(EntityKind.PROPOSITION)) == 1

    def test_save_action_cascades_types_and_predicates_only(self, family):
        nav = nav_entities()
        family.save(nav["navigation"])
        assert names(family.get_all(EntityKind.TYPE)) == ["robot", "wp"]
        assert names(family.get_all(EntityKind.PREDICATE)) == ["robot_at"]
        # parameter placeholders are not world objects
        assert family.get_all(EntityKind.OBJECT) == []

    def test_saved_action_round_trips_structurally(self, family):
        nav = nav_entities()
        family.save(nav["navigation"])
        assert family.get(EntityKind.ACTION, "navigation") == nav["navigation"]

    def test_get_all_objects_counts(self, family):
        nav = nav_entities()
        for key in ("rb1", "wp1", "wp2"):
            family.save(nav[key])
        assert len(family.get_all(EntityKind.OBJECT)) == 3

    def test_get_all_on_empty_kind(self, family):
        assert family.get_all(EntityKind.PREDICATE) == []

    def test_full_scenario_totals(self, family):
        load_nav(family)
        assert len(family.get_all(EntityKind.TYPE)) == 2
        assert len(family.get_all(EntityKind.OBJECT)) == 3
        assert len(family.get_all(EntityKind.PREDICATE)) == 1
        assert len(family.get_all(EntityKind.PROPOSITION)) == 2
        assert len(family.get_all(EntityKind.ACTION)) == 1

    def test_family_daos_share_one_store(self, family):
        nav = nav_entities()
        family.proposition_dao.save(nav["at_wp1"])
        assert family.type_dao.get("robot") == nav["robot"]
        assert family.object_dao.get("wp1") == nav["wp1"]
        assert family.predicate_dao.get("robot_at") == nav["robot_at"]

    def test_kind_daos_reject_foreign_entities(self, family):
        with pytest.raises(TypeError):
            family.type_dao.save(PddlObject(PddlType("robot"), "rb1"))


class TestPropositionGetters:
    def test_get_by_predicate_returns_goals_and_facts(self, family):
        nav = load_nav(family)
        found = family.get_by_predicate("robot_at")
        assert sorted(p.is_goal for p in found) == [False, True]
        assert nav["at_wp1"] in found and nav["goal_wp2"] in found

    def test_get_by_predicate_unused_name(self, family):
        load_nav(family)
        assert family.get_by_predicate("unused") == []

    def test_get_by_predicate_is_case_insensitive(self, family):
        load_nav(family)
        assert len(family.get_by_predicate("ROBOT_AT")) == 2

    def test_get_goals(self, family):
        nav = load_nav(family)
        assert family.get_goals() == [nav["goal_wp2"]]

    def test_get_goals_empty_kb(self, family):
        assert family.get_goals() == []

    def test_get_no_goals(self, family):
        nav = load_nav(family)
        assert family.get_no_goals() == [nav["at_wp1"]]

    def test_get_no_goals_empty_kb(self, family):
        assert family.get_no_goals() == []

    def test_goal_partition(self, family):
        load_nav(family)
        goals = family.get_goals()
        facts = family.get_no_goals()
        everything = family.get_all(EntityKind.PROPOSITION)
        assert len(goals) + len(facts) == len(everything)
        assert all(p.is_goal for p in goals)
        assert not any(p.is_goal for p in facts)

    def test_upsert_flips_goal_flag(self, family):
        nav = load_nav(family)
        family.save(dataclasses.replace(nav["goal_wp2"], is_goal=False))
        assert family.get_goals() == []
        assert len(family.get_no_goals()) == 2
        assert len(family.get_by_predicate("robot_at")) == 2


class TestDelete:
    def test_delete_proposition(self, family):
        nav = nav_entities()
        family.save(nav["at_wp1"])
        assert family.delete(nav["at_wp1"]) is True
        assert family.get_by_predicate("robot_at") == []

    def test_delete_absent_is_noop(self, family):
        assert family.delete(PddlType("ghost")) is False

    def test_delete_matches_by_key_ignoring_goal_flag(self, family):
        nav = nav_entities()
        family.save(nav["goal_wp2"])
        assert family.delete(dataclasses.replace(nav["goal_wp2"], is_goal=False))
        assert family.get_all(EntityKind.PROPOSITION) == []

    def test_delete_type_with_object_refused(self, family):
        nav = nav_entities()
        family.save(nav["rb1"])
        with pytest.raises(DependentsExist):
            family.delete(nav["robot"])

    def test_delete_type_with_predicate_refused(self, family):
        nav = nav_entities()
        family.save(nav["robot_at"])
        with pytest.raises(DependentsExist):
            family.delete(nav["wp"])

    def test_delete_type_used_by_action_parameter_refused(self, family):
        nav = nav_entities()
        family.save(nav["navigation"])
        with pytest.raises(DependentsExist):
            family.delete(nav["robot"])

    def test_delete_predicate_with_propositions_refused(self, family):
        nav = nav_entities()
        family.save(nav["at_wp1"])
        with pytest.raises(DependentsExist):
            family.delete(nav["robot_at"])

    def test_delete_predicate_used_by_action_refused(self, family):
        nav = nav_entities()
        family.save(nav["navigation"])
        with pytest.raises(DependentsExist):
            family.delete(nav["robot_at"])

    def test_delete_object_referenced_by_proposition_refused(self, family):
        nav = nav_entities()
        family.save(nav["at_wp1"])
        with pytest.raises(DependentsExist):
            family.delete(nav["wp1"])

    def test_delete_unreferenced_object(self, family):
        nav = nav_entities()
        family.save(nav["rb1"])
        assert family.delete(nav["rb1"]) is True
        assert family.get(EntityKind.OBJECT, "rb1") is None

    def test_delete_action_is_never_blocked(self, family):
        nav = load_nav(family)
        assert family.delete(nav["navigation"]) is True

    def test_delete_in_dependency_order_unlocks(self, family):
        nav = nav_entities()
        family.save(nav["at_wp1"])
        family.delete(nav["at_wp1"])
        family.delete(nav["rb1"])
        for obj in (nav["wp1"],):
            family.delete(obj)
        family.delete(nav["robot_at"])
        family.delete(nav["robot"])
        family.delete(nav["wp"])
        assert snapshot(family) == {kind.value: {} for kind in EntityKind}

    def test_delete_then_resave(self, family):
        nav = nav_entities()
        family.save(nav["rb1"])
        family.delete(nav["rb1"])
        family.save(nav["rb1"])
        assert family.get(EntityKind.OBJECT, "rb1") == nav["rb1"]


class TestConflicts:
    def test_proposition_with_conflicting_predicate_arity(self, family):
        nav = load_nav(family)
        short = PddlPredicate("robot_at", (nav["robot"],))
        bad = PddlProposition(short, (nav["rb1"],))
        with pytest.raises(ConflictingDefinition):
            family.save(bad)

    def test_conflicting_save_leaves_state_unchanged(self, family):
        nav = load_nav(family)
        before = snapshot(family)
        short = PddlPredicate("robot_at", (nav["robot"],))
        with pytest.raises(ConflictingDefinition):
            family.save(PddlProposition(short, (nav["rb1"],)))
        assert snapshot(family) == before

    def test_conflicting_object_type_in_cascade(self, family):
        nav = load_nav(family)
        fake_rb1 = PddlObject(nav["wp"], "rb1")
        prop = PddlProposition(nav["robot_at"], (nav["rb1"], fake_rb1))
        # same names, incompatible structures: rb1 exists as a robot
        with pytest.raises(ConflictingDefinition):
            family.save(prop)

    def test_intra_save_conflicting_dependencies(self, family):
        robot = PddlType("robot")
        wp = PddlType("wp")
        p = PddlPredicate("p", (robot, wp))
        a = PddlObject(robot, "a")
        a_again = PddlObject(wp, "a")
        with pytest.raises(ConflictingDefinition):
            family.save(PddlProposition(p, (a, a_again)))

    def test_direct_restructure_without_dependents_is_update(self, family):
        robot = PddlType("robot")
        family.save(PddlPredicate("beeps", (robot,)))
        family.save(PddlPredicate("beeps", ()))
        assert family.get(EntityKind.PREDICATE, "beeps") == PddlPredicate("beeps", ())

    def test_direct_restructure_with_dependents_conflicts(self, family):
        nav = load_nav(family)
        with pytest.raises(ConflictingDefinition):
            family.save(PddlPredicate("robot_at", (nav["robot"],)))

    def test_object_retype_with_dependents_conflicts(self, family):
        nav = load_nav(family)
        with pytest.raises(ConflictingDefinition):
            family.save(PddlObject(nav["wp"], "rb1"))

    def test_object_retype_without_dependents_is_update(self, family):
        nav = nav_entities()
        family.save(nav["rb1"])
        retyped = PddlObject(nav["wp"], "rb1")
        family.save(retyped)
        assert family.get(EntityKind.OBJECT, "rb1") == retyped

    def test_action_redefinition_always_allowed(self, family):
        nav = load_nav(family)
        slower = dataclasses.replace(nav["navigation"], duration=99)
        family.save(slower)
        assert family.get(EntityKind.ACTION, "navigation").duration == 99

    def test_action_with_inconsistent_literal_predicates(self, family):
        robot = PddlType("robot")
        p2 = PddlPredicate("seen", (robot, robot))
        p1 = PddlPredicate("seen", (robot,))
        r = PddlObject(robot, "r")
        action = PddlAction(
            "scan",
            (r,),
            (PddlConditionEffect(p1, (r,), time=TimeSpecifier.AT_START),),
            (PddlConditionEffect(p2, (r, r), time=TimeSpecifier.AT_END),),
        )
        with pytest.raises(ConflictingDefinition):
            family.save(action)


class TestReset:
    def test_reset_clears_every_kind(self, family):
        load_nav(family)
        assert family.reset() is True
        for kind in EntityKind:
            assert family.get_all(kind) == []
        assert family.get_goals() == [] and family.get_no_goals() == []

    def test_reset_on_empty_is_idempotent(self, family):
        assert family.reset() is True
        assert family.reset() is True
        for kind in EntityKind:
            assert family.get_all(kind) == []

    def test_saves_work_after_reset(self, family):
        load_nav(family)
        family.reset()
        family.save(PddlType("fresh"))
        assert names(family.get_all(EntityKind.TYPE)) == ["fresh"]


class TestReferentialIntegrity:
    def test_stored_references_always_resolvable(self, family):
        nav = load_nav(family)
        family.save(PddlProposition(nav["robot_at"], (nav["rb1"], nav["wp2"])))
        family.delete(nav["goal_wp2"])
        for prop in family.get_all(EntityKind.PROPOSITION):
            assert family.get(EntityKind.PREDICATE, prop.predicate.name) == prop.predicate
            for obj in prop.objects:
                assert family.get(EntityKind.OBJECT, obj.name) == obj
        for obj in family.get_all(EntityKind.OBJECT):
            assert family.get(EntityKind.TYPE, obj.type.name) == obj.type
