"""Entity model: construction, validation, canonicalization, equality."""

import dataclasses

import pytest
from hypothesis import given, strategies as st

from kantkb.errors import (
    ArityMismatch,
    DuplicateParameter,
    InvalidIdentifier,
    InvalidTimePlacement,
    TimeAnnotationMismatch,
    TypeMismatch,
    UnboundParameter,
)
from kantkb.model import (
    PddlAction,
    PddlConditionEffect,
    PddlObject,
    PddlPredicate,
    PddlProposition,
    PddlType,
    TimeSpecifier,
    entity_key,
)

from kbgen import nav_entities


class TestType:
    def test_simple_names(self):
        assert PddlType("robot").name == "robot"
        assert PddlType("wp").name == "wp"

    def test_canonicalized_to_lowercase(self):
        assert PddlType("Robot") == PddlType("ROBOT") == PddlType("robot")

    def test_canonicalization_is_idempotent(self):
        once = PddlType("MixedCase-Name")
        assert PddlType(once.name) == once

    @pytest.mark.parametrize("bad", ["2wp", "", "robot at", "-x", "_x", "a b", "wüp"])
    def test_bad_identifiers_rejected(self, bad):
        with pytest.raises(InvalidIdentifier):
            PddlType(bad)

    def test_odd_but_legal_identifiers(self):
        for name in ("a", "a-", "x_1-y", "z9"):
            assert PddlType(name).name == name


class TestObjectAndPredicate:
    def test_object_carries_exactly_one_type(self):
        robot = PddlType("robot")
        rb1 = PddlObject(robot, "rb1")
        assert rb1.name == "rb1" and rb1.type == robot

    def test_object_empty_name_rejected(self):
        with pytest.raises(InvalidIdentifier):
            PddlObject(PddlType("wp"), "")

    def test_binary_predicate(self):
        nav = nav_entities()
        assert nav["robot_at"].arity == 2
        assert [t.name for t in nav["robot_at"].parameter_types] == ["robot", "wp"]

    def test_zero_ary_predicate_is_legal(self):
        assert PddlPredicate("raining").arity == 0
        assert PddlPredicate("raining", ()).parameter_types == ()

    def test_predicate_name_with_space_rejected(self):
        with pytest.raises(InvalidIdentifier):
            PddlPredicate("robot at", (PddlType("robot"),))


class TestProposition:
    def test_grounded_pair(self):
        nav = nav_entities()
        assert not nav["at_wp1"].is_goal
        assert nav["goal_wp2"].is_goal
        assert [o.name for o in nav["at_wp1"].objects] == ["rb1", "wp1"]

    def test_arity_mismatch(self):
        nav = nav_entities()
        with pytest.raises(ArityMismatch) as err:
            PddlProposition(nav["robot_at"], (nav["rb1"],))
        assert err.value.expected == 2 and err.value.got == 1

    def test_type_mismatch_carries_position(self):
        nav = nav_entities()
        with pytest.raises(TypeMismatch) as err:
            PddlProposition(nav["robot_at"], (nav["wp1"], nav["rb1"]))
        assert err.value.position == 0

    def test_composite_key(self):
        nav = nav_entities()
        assert entity_key(nav["at_wp1"]) == "robot_at|rb1,wp1"
        zero = PddlProposition(PddlPredicate("raining"), ())
        assert entity_key(zero) == "raining|"


class TestConditionEffect:
    def test_timed_literals(self):
        nav = nav_entities()
        cond = nav["navigation"].conditions[0]
        assert cond.time is TimeSpecifier.AT_START and not cond.is_negative
        neg, arrive = nav["navigation"].effects
        assert neg.is_negative and neg.time is TimeSpecifier.AT_START
        assert arrive.time is TimeSpecifier.AT_END

    def test_arity_and_typing_checked(self):
        nav = nav_entities()
        r = PddlObject(nav["robot"], "r")
        with pytest.raises(ArityMismatch):
            PddlConditionEffect(nav["robot_at"], (r,))
        with pytest.raises(TypeMismatch):
            PddlConditionEffect(nav["robot_at"], (r, r))


class TestAction:
    def test_navigation_defaults(self):
        nav = nav_entities()
        action = nav["navigation"]
        assert action.durative is True
        assert action.duration == 10
        assert [p.name for p in action.parameters] == ["r", "s", "d"]

    def test_unbound_parameter(self):
        nav = nav_entities()
        r = PddlObject(nav["robot"], "r")
        s = PddlObject(nav["wp"], "s")
        d = PddlObject(nav["wp"], "d")
        effect = PddlConditionEffect(nav["robot_at"], (r, d), time=TimeSpecifier.AT_END)
        with pytest.raises(UnboundParameter) as err:
            PddlAction("navigation", (r, s), (), (effect,))
        assert err.value.name == "d"

    def test_parameter_type_clash_is_unbound(self):
        nav = nav_entities()
        r = PddlObject(nav["robot"], "r")
        s_as_robot = PddlObject(nav["robot"], "s")
        s_as_wp = PddlObject(nav["wp"], "s")
        cond = PddlConditionEffect(nav["robot_at"], (r, s_as_wp), time=TimeSpecifier.AT_START)
        with pytest.raises(UnboundParameter):
            PddlAction("nav", (r, s_as_robot), (cond,), ())

    def test_duplicate_parameter(self):
        robot = PddlType("robot")
        r1 = PddlObject(robot, "r")
        r2 = PddlObject(robot, "r")
        with pytest.raises(DuplicateParameter):
            PddlAction("pick", (r1, r2), (), ())

    def test_time_on_non_durative_rejected(self):
        nav = nav_entities()
        r = PddlObject(nav["robot"], "r")
        s = PddlObject(nav["wp"], "s")
        cond = PddlConditionEffect(nav["robot_at"], (r, s), time=TimeSpecifier.AT_START)
        with pytest.raises(TimeAnnotationMismatch):
            PddlAction("pick", (r, s), (cond,), (), durative=False)

    def test_missing_time_on_durative_rejected(self):
        nav = nav_entities()
        r = PddlObject(nav["robot"], "r")
        s = PddlObject(nav["wp"], "s")
        cond = PddlConditionEffect(nav["robot_at"], (r, s))
        with pytest.raises(TimeAnnotationMismatch):
            PddlAction("pick", (r, s), (cond,), (), durative=True)

    def test_over_all_effect_rejected(self):
        nav = nav_entities()
        r = PddlObject(nav["robot"], "r")
        s = PddlObject(nav["wp"], "s")
        effect = PddlConditionEffect(nav["robot_at"], (r, s), time=TimeSpecifier.OVER_ALL)
        with pytest.raises(InvalidTimePlacement):
            PddlAction("watch", (r, s), (), (effect,))

    def test_over_all_condition_allowed(self):
        nav = nav_entities()
        r = PddlObject(nav["robot"], "r")
        s = PddlObject(nav["wp"], "s")
        cond = PddlConditionEffect(nav["robot_at"], (r, s), time=TimeSpecifier.OVER_ALL)
        action = PddlAction("watch", (r, s), (cond,), ())
        assert action.conditions[0].time is TimeSpecifier.OVER_ALL

    def test_negative_duration_rejected(self):
        with pytest.raises(ValueError):
            PddlAction("wait", (), (), (), duration=-1)

    def test_non_durative_keeps_duration_value(self):
        action = PddlAction("wait", (), (), (), durative=False, duration=7)
        assert action.duration == 7


class TestEquality:
    def test_identity(self):
        nav = nav_entities()
        assert nav["robot"] == PddlType("robot")

    def test_differing_object(self):
        nav = nav_entities()
        other = PddlProposition(nav["robot_at"], (nav["rb1"], nav["wp2"]))
        assert nav["at_wp1"] != other

    def test_duration_differs(self):
        nav = nav_entities()
        slower = dataclasses.replace(nav["navigation"], duration=5)
        assert nav["navigation"] != slower

    def test_goal_flag_differs(self):
        nav = nav_entities()
        assert nav["at_wp1"] != dataclasses.replace(nav["at_wp1"], is_goal=True)

    def test_cross_kind_never_equal(self):
        assert PddlType("robot") != PddlObject(PddlType("robot"), "robot")

    def test_entities_are_immutable_and_hashable(self):
        nav = nav_entities()
        with pytest.raises(dataclasses.FrozenInstanceError):
            nav["robot"].name = "droid"
        assert len({nav["robot"], PddlType("robot"), nav["wp"]}) == 2


# -- property tests ------------------------------------------------------------

identifiers = st.from_regex(r"[a-z][a-z0-9_\-]{0,8}", fullmatch=True)
types_st = st.builds(PddlType, identifiers)
objects_st = st.builds(PddlObject, types_st, identifiers)
predicates_st = st.builds(
    PddlPredicate, identifiers, st.lists(types_st, max_size=3).map(tuple)
)


@st.composite
def propositions_st(draw):
    predicate = draw(predicates_st)
    objects = tuple(
        PddlObject(t, draw(identifiers)) for t in predicate.parameter_types
    )
    return PddlProposition(predicate, objects, is_goal=draw(st.booleans()))


entities_st = st.one_of(types_st, objects_st, predicates_st, propositions_st())


@given(entities_st)
def test_equality_is_reflexive(entity):
    assert entity == entity


@given(entities_st, entities_st)
def test_equality_is_symmetric(a, b):
    assert (a == b) == (b == a)


@given(entities_st, entities_st, entities_st)
def test_equality_is_transitive(a, b, c):
    if a == b and b == c:
        assert a == c


@given(types_st)
def test_canonicalization_idempotent(t):
    assert PddlType(t.name) == t


@given(predicates_st, st.lists(objects_st, max_size=5))
def test_arity_mismatch_always_rejected(predicate, objects):
    if len(objects) == predicate.arity:
        return
    with pytest.raises(ArityMismatch):
        PddlProposition(predicate, tuple(objects))


@given(propositions_st())
def test_constructed_propositions_satisfy_arity_invariant(proposition):
    assert len(proposition.objects) == len(proposition.predicate.parameter_types)
    for obj, expected in zip(proposition.objects, proposition.predicate.parameter_types):
        assert obj.type.name == expected.name
