import random

import pytest

from peerscope import builder
from peerscope.errors import GraphError, SurveyError
from peerscope.survey import (
    AnswerRecord,
    AuditResult,
    FasResult,
    PersonProfile,
    QuestionnaireEvent,
    RosterMember,
)

EVENT = QuestionnaireEvent("classroom_battery", "2026-03-02")


def roster(names):
    return [RosterMember(n) for n in names]


def weight_answer(person, target, value):
    return AnswerRecord(person, EVENT, "time_spent", value, target=target)


def drink_answer(person, target, value):
    return AnswerRecord(person, EVENT, "drink_with", value, target=target)


class TestBuildFriendship:
    def test_weight_recorded(self):
        g = builder.build_friendship([weight_answer("A", "B", 4)], roster("AB"))
        assert g.tie_weight(g.node_id("A"), g.node_id("B")) == 4
        assert g.directed and g.weighted and g.name == "friendship"

    def test_weight_1_means_no_tie(self):
        g = builder.build_friendship([weight_answer("A", "B", 1)], roster("AB"))
        assert g.m == 0

    def test_missing_answer_means_no_tie(self):
        g = builder.build_friendship([], roster("AB"))
        assert g.m == 0 and g.n == 2

    def test_node_per_roster_member(self):
        g = builder.build_friendship([], roster("ABCD"))
        assert g.labels() == ("A", "B", "C", "D")

    def test_unknown_target_rejected(self):
        with pytest.raises(SurveyError):
            builder.build_friendship([weight_answer("A", "X", 4)], roster("AB"))

    def test_other_questions_ignored(self):
        answers = [AnswerRecord("A", EVENT, "audit_q1", 2)]
        assert builder.build_friendship(answers, roster("AB")).m == 0


class TestTieLevels:
    def make(self, weights):
        answers = [weight_answer(s, t, w) for s, t, w in weights]
        return builder.derive_tie_levels(
            builder.build_friendship(answers, roster("ABCD"))
        )

    def test_friend_rule_reciprocal_4(self):
        levels = self.make([("A", "B", 4), ("B", "A", 5)])
        friends = levels["friends"]
        assert not friends.directed
        assert friends.has_tie(friends.node_id("A"), friends.node_id("B"))

    def test_one_sided_4_is_not_friendship(self):
        levels = self.make([("A", "B", 4), ("B", "A", 3)])
        assert levels["friends"].m == 0

    def test_mutual_3_is_partners_not_friends(self):
        levels = self.make([("A", "B", 3), ("B", "A", 3)])
        assert levels["partners"].m == 2
        assert levels["friends"].m == 0

    def test_weight_2_is_acquaintance_only(self):
        levels = self.make([("A", "B", 2)])
        assert levels["acquaintances"].m == 1
        assert levels["partners"].m == 0

    def test_names(self):
        levels = self.make([("A", "B", 4)])
        assert {g.name for g in levels.values()} == {
            "acquaintances",
            "partners",
            "friends",
        }

    def test_containment_property(self):
        rng = random.Random(20)
        names = "ABCDEF"
        for _ in range(50):
            answers = [
                weight_answer(s, t, rng.randint(1, 5))
                for s in names
                for t in names
                if s != t and rng.random() < 0.6
            ]
            friendship = builder.build_friendship(answers, roster(names))
            levels = builder.derive_tie_levels(friendship)
            acq, part, friends = (
                levels["acquaintances"],
                levels["partners"],
                levels["friends"],
            )
            for tie in part.ties():
                assert acq.has_tie(tie.src, tie.dst)
            for tie in friends.ties():
                assert part.has_tie(tie.src, tie.dst) and part.has_tie(tie.dst, tie.src)
                w1 = friendship.tie_weight(tie.src, tie.dst)
                w2 = friendship.tie_weight(tie.dst, tie.src)
                assert w1 >= 4 and w2 >= 4


class TestBuildConsumption:
    def test_yes_makes_tie(self):
        g = builder.build_consumption([drink_answer("A", "B", 1)], roster("AB"))
        assert g.has_tie(g.node_id("A"), g.node_id("B"))
        assert g.directed and not g.weighted

    def test_no_makes_no_tie(self):
        g = builder.build_consumption([drink_answer("A", "B", 0)], roster("AB"))
        assert g.m == 0

    def test_all_no(self):
        g = builder.build_consumption([], roster("ABC"))
        assert g.n == 3 and g.m == 0

    def test_non_boolean_rejected(self):
        bad = AnswerRecord("A", EVENT, "drink_with", 3, target="B")
        with pytest.raises(SurveyError):
            builder.build_consumption([bad], roster("AB"))

    def test_same_node_set_as_friendship(self):
        r = roster("ABC")
        f = builder.build_friendship([], r)
        c = builder.build_consumption([], r)
        assert f.labels() == c.labels()


class TestAttachAttributes:
    def profile(self, name, zone="II", score=10, band="high", gender="F"):
        return PersonProfile(
            person=name,
            pseudonym=name,
            gender=gender,
            audit=AuditResult(score, zone, "Simple advice"),
            fas=FasResult(7, band),
        )

    def test_attributes_set(self):
        g = builder.build_friendship([weight_answer("A", "B", 4)], roster("AB"))
        out = builder.attach_attributes(
            g, {"A": self.profile("A"), "B": self.profile("B", zone="I", score=2)}
        )
        node = out.node(out.node_id("A"))
        assert node.attrs["audit_zone"] == "II"
        assert node.attrs["audit_score"] == 10
        assert node.attrs["fas_band"] == "high"
        assert node.attrs["gender"] == "F"
        assert out.node(out.node_id("B")).attrs["audit_zone"] == "I"

    def test_missing_profile_errors_with_name(self):
        g = builder.build_friendship([], roster("AB"))
        with pytest.raises(GraphError, match="'B'"):
            builder.attach_attributes(g, {"A": self.profile("A")})

    def test_absent_instrument_omits_attribute(self):
        g = builder.build_friendship([], roster("A"))
        profile = PersonProfile(person="A", pseudonym="A", gender="M")
        out = builder.attach_attributes(g, {"A": profile})
        assert "audit_zone" not in out.node(0).attrs
        assert out.node(0).attrs["gender"] == "M"

    def test_ties_preserved(self):
        g = builder.build_friendship([weight_answer("A", "B", 5)], roster("AB"))
        out = builder.attach_attributes(g, {n: self.profile(n) for n in "AB"})
        assert out.ties() == g.ties()
