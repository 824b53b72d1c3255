"""Qualitative social positions and peer suggestions derived from networks.

Three positions are banded Low / Medium / High by cohort tertile:

* popularity -- how many classmates name the student a friend (in-degree on
  the strong-tie naming graph, weight >= 4);
* mediator role -- betweenness on the partners graph (weight >= 3);
* influence -- out-degree times mean outgoing weight on the full
  friendship graph, i.e. how many people the student names and how strongly.

Banding is by strict-rank percentile, so ties fall into the lower band: with
percentile p = (#strictly smaller) / n, p < 1/3 is Low, p < 2/3 Medium,
else High.  A cohort of identical values is therefore all Low, which also
covers fully isolated students.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .builder import FRIEND_MIN_WEIGHT, PARTNER_MIN_WEIGHT
from .errors import GraphError
from .graph import SocialGraph
from .metrics import betweenness_all
from .metrics.kernels import csr_adjacency, sigma_matrix

BANDS = ("Low", "Medium", "High")
ZONE_ORDER = ("I", "II", "III", "IV")


def tertile_bands(values: Sequence[float]) -> list:
    """Band each value Low/Medium/High by its strict-rank percentile."""

    n = len(values)
    ordered = sorted(values)
    out = []
    for v in values:
        # bisect_left = number of strictly smaller values
        p = bisect_left(ordered, v) / n
        out.append("Low" if p < 1 / 3 else "Medium" if p < 2 / 3 else "High")
    return out


@dataclass(frozen=True)
class SocialProfile:
    """One student's position in the class networks."""

    person: str
    declared_friends: int
    named_by: int
    popularity: str
    mediator_role: str
    influence: str


def _naming_graph(friendship: SocialGraph) -> SocialGraph:
    return friendship.filter_min_weight(FRIEND_MIN_WEIGHT, name="naming")


def _partners_graph(friendship: SocialGraph) -> SocialGraph:
    return friendship.filter_min_weight(PARTNER_MIN_WEIGHT, name="partners")


def _influence_scores(friendship: SocialGraph) -> list:
    scores = []
    for node in friendship.nodes:
        weights = [friendship.tie_weight(node.id, w) for w in friendship.out_neighbors(node.id)]
        if weights:
            scores.append(len(weights) * (sum(weights) / len(weights)))
        else:
            scores.append(0.0)
    return scores


def social_profiles(friendship: SocialGraph) -> dict:
    """Compute a :class:`SocialProfile` for every node of the friendship graph.

    The graph must be the directed, weighted friendship graph produced by
    the network builder; the strong-tie and partners views are derived here.
    """

    if not friendship.directed or not friendship.weighted:
        raise GraphError("social profiles need the directed weighted friendship graph")
    naming = _naming_graph(friendship)
    partners = _partners_graph(friendship)
    declared = []
    named = []
    for node in naming.nodes:
        declared.append(len(naming.out_neighbors(node.id)))
        named.append(len(naming.in_neighbors(node.id)))
    betw = betweenness_all(partners)
    influence = _influence_scores(friendship)
    pop_bands = tertile_bands(named)
    med_bands = tertile_bands(betw)
    inf_bands = tertile_bands(influence)
    out = {}
    for i, node in enumerate(friendship.nodes):
        out[node.label] = SocialProfile(
            person=node.label,
            declared_friends=declared[i],
            named_by=named[i],
            popularity=pop_bands[i],
            mediator_role=med_bands[i],
            influence=inf_bands[i],
        )
    return out


def _zone_index(zone: str) -> int:
    try:
        return ZONE_ORDER.index(zone)
    except ValueError:
        raise GraphError(f"unknown risk zone: {zone!r}") from None


def find_influencers(
    friendship: SocialGraph,
    consumption: Optional[SocialGraph],
    zones: Mapping[str, str],
    ego: str,
) -> tuple:
    """Alters who may pull the ego toward heavier drinking.

    Candidates are people tied to the ego -- a friendship arc of weight >= 3
    in either direction, or any drinking-mates arc -- whose risk zone is
    strictly above the ego's.  Ranked by zone gap, then strongest connecting
    tie, then how widely the candidate is named a friend, then name.  An ego
    already in the top zone gets no suggestions.
    """

    if not friendship.has_label(ego):
        raise GraphError(f"unknown person: {ego!r}")
    ego_zone = zones.get(ego)
    if ego_zone is None:
        return ()
    ego_level = _zone_index(ego_zone)
    if ego_level == len(ZONE_ORDER) - 1:
        return ()
    naming = _naming_graph(friendship)
    eid = friendship.node_id(ego)
    links: dict = {}

    def link(other_id: int, weight: int) -> None:
        label = friendship.node(other_id).label
        links[label] = max(links.get(label, 0), weight)

    for other in friendship.out_neighbors(eid):
        w = friendship.tie_weight(eid, other)
        if w >= PARTNER_MIN_WEIGHT:
            link(other, w)
    for other in friendship.in_neighbors(eid):
        w = friendship.tie_weight(other, eid)
        if w >= PARTNER_MIN_WEIGHT:
            link(other, w)
    if consumption is not None and consumption.has_label(ego):
        cid = consumption.node_id(ego)
        for other in consumption.neighbors(cid):
            label = consumption.node(other).label
            links[label] = max(links.get(label, 0), 1)

    ranked = []
    for label, weight in links.items():
        zone = zones.get(label)
        if zone is None:
            continue
        level = _zone_index(zone)
        if level <= ego_level:
            continue
        popularity = len(naming.in_neighbors(naming.node_id(label))) if naming.has_label(label) else 0
        ranked.append((ego_level - level, -weight, -popularity, label))
    ranked.sort()
    return tuple(r[-1] for r in ranked)


def _mediator_context(friendship: SocialGraph) -> tuple:
    """Partners view plus all-pairs path counts and betweenness.

    Suggestion scans run once per student against the same frozen
    friendship graph, so the shared pieces are cached on the graph
    instance (same idea as the frozen tie cache); unfrozen graphs are
    computed fresh since they may still change.
    """

    ctx = getattr(friendship, "_mediator_cache", None) if friendship.frozen else None
    if ctx is None:
        partners = _partners_graph(friendship)
        indptr, nbrs = csr_adjacency(partners, direction="out")
        dist, sigma = sigma_matrix(indptr, nbrs)
        betw = betweenness_all(partners)
        ctx = (partners, dist, sigma, betw)
        if friendship.frozen:
            friendship._mediator_cache = ctx
    return ctx


def find_mediators(friendship: SocialGraph, ego: str) -> tuple:
    """People placed to carry an intervention message to the ego.

    Works on the partners graph.  A candidate must sit within two steps of
    the ego and on at least one shortest path from somebody else to the ego;
    candidates are ranked by the average fraction of shortest paths to the
    ego that run through them (path counts composed as
    sigma_s,ego(v) = sigma_sv * sigma_v,ego when the distances add up),
    breaking ties by overall betweenness and then name.  An ego everyone
    reaches directly has no mediators.
    """

    if not friendship.has_label(ego):
        raise GraphError(f"unknown person: {ego!r}")
    partners, dist, sigma, betw = _mediator_context(friendship)
    n = partners.n
    if n <= 2:
        return ()
    e = partners.node_id(ego)
    ranked = []
    for v in range(n):
        if v == e or dist[v][e] < 1 or dist[v][e] > 2:
            continue
        total = 0.0
        sources = 0
        for s in range(n):
            if s in (e, v) or dist[s][e] < 1:
                continue
            sources += 1
            if dist[s][v] >= 0 and dist[s][v] + dist[v][e] == dist[s][e]:
                total += float(sigma[s][v]) * float(sigma[v][e]) / float(sigma[s][e])
        if sources == 0:
            continue
        fraction = total / sources
        if fraction > 0.0:
            ranked.append((-fraction, -betw[v], partners.node(v).label))
    ranked.sort()
    return tuple(r[-1] for r in ranked)
