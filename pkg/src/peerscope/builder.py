"""Turns validated answer sets into the analysis graphs.

The friendship network keeps the answered contact weights (dropping the
"never spend time together" grade, which denotes absence of contact);
tie levels derive from it by thresholding — acquaintances at weight 2+,
partners at 3+, friends as the reciprocal 4+ projection.  The
consumption network is the directed yes/no drinking-companion graph.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import GraphError, SurveyError
from .graph import SocialGraph
from .survey import (
    AnswerRecord,
    DRINK_WITH_QUESTION,
    PersonProfile,
    RosterMember,
    TIME_SPENT_QUESTION,
)

ACQUAINTANCE_MIN_WEIGHT = 2
PARTNER_MIN_WEIGHT = 3
FRIEND_MIN_WEIGHT = 4


def _roster_graph(name: str, roster: Sequence[RosterMember], *, weighted: bool) -> SocialGraph:
    g = SocialGraph(name, directed=True, weighted=weighted)
    for member in roster:
        g.add_node(member.pseudonym)
    return g


def build_friendship(
    answers: Iterable[AnswerRecord], roster: Sequence[RosterMember]
) -> SocialGraph:
    """Directed weighted graph from the time-spent question.

    A weight-1 answer means no contact and produces no tie; a missing
    answer counts as weight 1.
    """
    g = _roster_graph("friendship", roster, weighted=True)
    for a in answers:
        if a.question != TIME_SPENT_QUESTION:
            continue
        if not g.has_label(a.person) or a.target is None or not g.has_label(a.target):
            raise SurveyError(
                f"unvalidated friendship answer {a.person!r} -> {a.target!r}"
            )
        if a.value >= ACQUAINTANCE_MIN_WEIGHT:
            g.add_tie(g.node_id(a.person), g.node_id(a.target), a.value)
    return g.freeze()


def derive_tie_levels(friendship: SocialGraph) -> dict[str, SocialGraph]:
    """The three relationship levels, weakest to strongest."""
    return {
        "acquaintances": friendship.filter_min_weight(
            ACQUAINTANCE_MIN_WEIGHT, "acquaintances"
        ),
        "partners": friendship.filter_min_weight(PARTNER_MIN_WEIGHT, "partners"),
        "friends": friendship.mutual_projection(FRIEND_MIN_WEIGHT, "friends"),
    }


def build_consumption(
    answers: Iterable[AnswerRecord], roster: Sequence[RosterMember]
) -> SocialGraph:
    """Directed unweighted graph: u -> v iff u would go drinking with v."""
    g = _roster_graph("consumption", roster, weighted=False)
    for a in answers:
        if a.question != DRINK_WITH_QUESTION:
            continue
        if not g.has_label(a.person) or a.target is None or not g.has_label(a.target):
            raise SurveyError(
                f"unvalidated consumption answer {a.person!r} -> {a.target!r}"
            )
        if a.value not in (0, 1):
            raise SurveyError(
                f"consumption answer must be yes/no, got {a.value!r}"
            )
        if a.value == 1:
            g.add_tie(g.node_id(a.person), g.node_id(a.target))
    return g.freeze()


def attach_attributes(
    g: SocialGraph, profiles: Mapping[str, PersonProfile]
) -> SocialGraph:
    """Copy of g with gender/risk/affluence attributes on every node."""
    attrs_by_label: dict[str, dict] = {}
    for node in g.nodes:
        profile = profiles.get(node.label)
        if profile is None:
            raise GraphError(f"no profile for node {node.label!r}")
        attrs: dict = {}
        if profile.gender is not None:
            attrs["gender"] = profile.gender
        if profile.audit is not None:
            attrs["audit_zone"] = profile.audit.zone
            attrs["audit_score"] = profile.audit.score
        if profile.fas is not None:
            attrs["fas_band"] = profile.fas.band
        attrs_by_label[node.label] = attrs
    return g.with_node_attrs(attrs_by_label)
