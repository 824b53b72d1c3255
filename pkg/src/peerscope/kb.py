"""Typed fact store with a forward-chaining rule engine.

The store keeps two things: an entity table (id -> kind, kinds drawn from
:data:`peerscope.vocab.ENTITY_KINDS`) and a set of subject/predicate/object
assertions whose predicates come from the closed vocabulary
:data:`peerscope.vocab.PREDICATES`.  Objects are either entity ids or plain
literals (str / int / float / bool), as declared per predicate.

On top of that sit conjunctive queries (:meth:`FactStore.query`) and rules
(:class:`Rule`) evaluated to fixpoint by :meth:`FactStore.run_rules`.  Rule
heads may mint new entities with deterministic ids via :class:`Mint`, so a
rule run is repeatable: running the same rules twice derives nothing new the
second time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .errors import KnowledgeError
from .graph import SocialGraph
from .vocab import ENTITY_KINDS, GRAPH_METRICS, NODE_METRICS, PREDICATES

Literal = Union[str, int, float, bool]


@dataclass(frozen=True)
class Var:
    """A named variable in a query pattern or rule."""

    name: str

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise KnowledgeError("variable name must be a non-empty string")


@dataclass(frozen=True)
class Mint:
    """Head-only term that creates an entity with a deterministic id.

    ``parts`` may mix constants and variables; the resolved parts are joined
    into the entity id, so the same binding always mints the same entity.
    """

    kind: str
    parts: tuple

    def __post_init__(self) -> None:
        if self.kind not in ENTITY_KINDS:
            raise KnowledgeError(f"unknown entity kind: {self.kind!r}")
        if not isinstance(self.parts, tuple) or not self.parts:
            raise KnowledgeError("Mint parts must be a non-empty tuple")
        for p in self.parts:
            if not isinstance(p, (Var, str)):
                raise KnowledgeError("Mint parts must be variables or strings")


def _escape_part(part: str) -> str:
    return part.replace("\\", "\\\\").replace(":", "\\:")


def mint_id(kind: str, *parts: str) -> str:
    """Deterministic entity id for ``kind`` keyed by ``parts``."""

    if kind not in ENTITY_KINDS:
        raise KnowledgeError(f"unknown entity kind: {kind!r}")
    if not parts:
        raise KnowledgeError("mint_id needs at least one key part")
    cleaned = []
    for part in parts:
        text = str(part)
        if not text or "\t" in text or "\n" in text or "\r" in text:
            raise KnowledgeError(f"invalid id part: {text!r}")
        cleaned.append(_escape_part(text))
    return kind + ":" + ":".join(cleaned)


# A body pattern is (subject, predicate, object) where subject is a Var or an
# entity id, the predicate is a concrete name from the vocabulary, and the
# object is a Var, an entity id, or a literal.
Pattern = tuple


def _pattern_vars(patterns: Iterable[Pattern]) -> set:
    found = set()
    for s, _p, o in patterns:
        if isinstance(s, Var):
            found.add(s.name)
        if isinstance(o, Var):
            found.add(o.name)
    return found


def _check_pattern(pattern, *, allow_var_object: bool = True) -> None:
    if not isinstance(pattern, tuple) or len(pattern) != 3:
        raise KnowledgeError(f"pattern must be a (subject, predicate, object) triple: {pattern!r}")
    s, p, o = pattern
    if not isinstance(s, (Var, str)):
        raise KnowledgeError(f"pattern subject must be a variable or entity id: {s!r}")
    if not isinstance(p, str) or p not in PREDICATES:
        raise KnowledgeError(f"unknown predicate: {p!r}")
    if not isinstance(o, (Var, str, int, float, bool)):
        raise KnowledgeError(f"pattern object must be a variable, entity id, or literal: {o!r}")


@dataclass(frozen=True)
class Rule:
    """A safe conjunctive rule: when every body pattern matches, assert the heads.

    Safety means every variable used in a head (directly or inside a
    :class:`Mint`) is bound by the body; violations are rejected here, at
    construction, rather than at run time.
    """

    name: str
    body: tuple
    head: tuple

    def __post_init__(self) -> None:
        if not isinstance(self.name, str) or not self.name:
            raise KnowledgeError("rule name must be a non-empty string")
        if not self.body:
            raise KnowledgeError(f"rule {self.name!r} has an empty body")
        if not self.head:
            raise KnowledgeError(f"rule {self.name!r} has an empty head")
        for pattern in self.body:
            _check_pattern(pattern)
        bound = _pattern_vars(self.body)
        for pattern in self.head:
            if not isinstance(pattern, tuple) or len(pattern) != 3:
                raise KnowledgeError(f"head must be a (subject, predicate, object) triple: {pattern!r}")
            s, p, o = pattern
            if not isinstance(p, str) or p not in PREDICATES:
                raise KnowledgeError(f"unknown predicate: {p!r}")
            if p == "hasKind":
                raise KnowledgeError("hasKind is managed by the store and cannot appear in a head")
            for term in (s, o):
                if isinstance(term, Var) and term.name not in bound:
                    raise KnowledgeError(
                        f"unsafe rule {self.name!r}: head variable ?{term.name} is not bound by the body"
                    )
                if isinstance(term, Mint):
                    for part in term.parts:
                        if isinstance(part, Var) and part.name not in bound:
                            raise KnowledgeError(
                                f"unsafe rule {self.name!r}: Mint variable ?{part.name} "
                                "is not bound by the body"
                            )
            if not isinstance(s, (Var, Mint, str)):
                raise KnowledgeError(f"head subject must be a variable, Mint, or entity id: {s!r}")
            if not isinstance(o, (Var, Mint, str, int, float, bool)):
                raise KnowledgeError(f"invalid head object: {o!r}")


@dataclass(frozen=True)
class Derivation:
    """One fact added by one rule during :meth:`FactStore.run_rules`."""

    rule: str
    subject: str
    predicate: str
    object: Literal

    @property
    def fact(self) -> tuple:
        return (self.subject, self.predicate, self.object)


@dataclass
class DerivationReport:
    """What a rule run added: facts with provenance, minted entities, rounds."""

    derivations: list = field(default_factory=list)
    minted: list = field(default_factory=list)  # (entity id, kind) pairs
    rounds: int = 0

    @property
    def new_fact_count(self) -> int:
        return len(self.derivations)

    def by_rule(self) -> dict:
        counts: dict = {}
        for d in self.derivations:
            counts[d.rule] = counts.get(d.rule, 0) + 1
        return counts


def _term_sort_key(value) -> tuple:
    return (type(value).__name__, repr(value))


class FactStore:
    """Entity table plus assertion set under a closed vocabulary."""

    def __init__(self) -> None:
        self._entities: dict = {}
        self._facts: set = set()
        # per-predicate (subject, object) pairs, plus the same pairs bucketed
        # by subject and by object so bound joins don't scan the predicate
        self._by_pred: dict = {}
        self._by_ps: dict = {}
        self._by_po: dict = {}

    # -- entities ----------------------------------------------------------

    def create_entity(self, kind: str, *parts) -> str:
        """Create (or re-assert) an entity; returns its deterministic id."""

        eid = mint_id(kind, *parts)
        self._ensure_entity(eid, kind)
        return eid

    def _ensure_entity(self, eid: str, kind: str) -> bool:
        existing = self._entities.get(eid)
        if existing is not None:
            if existing != kind:
                raise KnowledgeError(f"entity {eid!r} already exists with kind {existing!r}")
            return False
        if kind not in ENTITY_KINDS:
            raise KnowledgeError(f"unknown entity kind: {kind!r}")
        self._entities[eid] = kind
        self._add(eid, "hasKind", kind)
        return True

    def has_entity(self, eid: str) -> bool:
        return eid in self._entities

    def kind_of(self, eid: str) -> str:
        try:
            return self._entities[eid]
        except KeyError:
            raise KnowledgeError(f"unknown entity: {eid!r}") from None

    def entities(self) -> list:
        return sorted(self._entities.items())

    def entities_of_kind(self, kind: str) -> list:
        if kind not in ENTITY_KINDS:
            raise KnowledgeError(f"unknown entity kind: {kind!r}")
        return sorted(e for e, k in self._entities.items() if k == kind)

    # -- facts -------------------------------------------------------------

    def _add(self, subject: str, predicate: str, obj: Literal) -> bool:
        fact = (subject, predicate, obj)
        if fact in self._facts:
            return False
        self._facts.add(fact)
        pair = (subject, obj)
        self._by_pred.setdefault(predicate, set()).add(pair)
        self._by_ps.setdefault(predicate, {}).setdefault(subject, []).append(pair)
        self._by_po.setdefault(predicate, {}).setdefault(obj, []).append(pair)
        return True

    def _validate_fact(self, subject, predicate, obj) -> None:
        if not isinstance(predicate, str) or predicate not in PREDICATES:
            raise KnowledgeError(f"unknown predicate: {predicate!r}")
        if not isinstance(subject, str) or subject not in self._entities:
            raise KnowledgeError(f"unknown subject entity: {subject!r}")
        if PREDICATES[predicate] == "entity":
            if not isinstance(obj, str) or obj not in self._entities:
                raise KnowledgeError(
                    f"object of {predicate!r} must be an existing entity, got {obj!r}"
                )
        else:
            if not isinstance(obj, (str, int, float, bool)):
                raise KnowledgeError(f"object of {predicate!r} must be a literal, got {obj!r}")

    def assert_fact(self, subject: str, predicate: str, obj: Literal) -> bool:
        """Add one assertion.  Returns False when it was already present."""

        if predicate == "hasKind":
            raise KnowledgeError("hasKind is managed by the store and cannot be asserted")
        self._validate_fact(subject, predicate, obj)
        return self._add(subject, predicate, obj)

    def has_fact(self, subject: str, predicate: str, obj: Literal) -> bool:
        return (subject, predicate, obj) in self._facts

    def facts(self) -> list:
        return sorted(self._facts, key=lambda f: (f[0], f[1], _term_sort_key(f[2])))

    def __len__(self) -> int:
        return len(self._facts)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FactStore):
            return NotImplemented
        return self._entities == other._entities and self._facts == other._facts

    # -- queries -----------------------------------------------------------

    def query(self, patterns: Iterable[Pattern]) -> list:
        """Join the patterns; return bindings as dicts, deterministically ordered.

        Variables are :class:`Var` terms; repeated variables must agree.
        Results are sorted by the tuple of bound values in first-appearance
        order of the variables.
        """

        patterns = tuple(patterns)
        if not patterns:
            raise KnowledgeError("query needs at least one pattern")
        for pattern in patterns:
            _check_pattern(pattern)
        order: list = []
        for s, _p, o in patterns:
            for term in (s, o):
                if isinstance(term, Var) and term.name not in order:
                    order.append(term.name)
        rows = {tuple(b[v] for v in order) for b in self._join(patterns, {}, None)}
        out = [dict(zip(order, row)) for row in rows]
        out.sort(key=lambda b: tuple(_term_sort_key(b[v]) for v in order))
        return out

    def _join(self, patterns, binding, delta_at) -> Iterator[dict]:
        """Recursive nested-loop join.

        When ``delta_at`` is an (index, pairs-by-predicate) pair, the
        pattern at that index matches only against the given fact subset --
        the semi-naive restriction used by :meth:`run_rules`.
        """

        if not patterns:
            yield binding
            return
        s, p, o = patterns[0]
        if isinstance(s, Var) and s.name in binding:
            s = binding[s.name]
        if isinstance(o, Var) and o.name in binding:
            o = binding[o.name]
        if delta_at is not None and delta_at[0] == 0:
            candidates = delta_at[1].get(p, ())
        elif not isinstance(s, Var):
            candidates = self._by_ps.get(p, {}).get(s, ())
        elif not isinstance(o, Var):
            # bool/int hash collisions land in one bucket; the exact-type
            # check below still separates them
            candidates = self._by_po.get(p, {}).get(o, ())
        else:
            candidates = self._by_pred.get(p, ())
        rest_delta = None
        if delta_at is not None and delta_at[0] > 0:
            rest_delta = (delta_at[0] - 1, delta_at[1])
        s_is_var = isinstance(s, Var)
        o_is_var = isinstance(o, Var)
        rest = patterns[1:]
        for fs, fo in candidates:
            if not s_is_var and fs != s:
                continue
            if not o_is_var:
                if fo != o or type(fo) is not type(o):
                    continue
            if s_is_var or o_is_var:
                new_binding = dict(binding)
                if s_is_var:
                    new_binding[s.name] = fs
                if o_is_var:
                    new_binding[o.name] = fo
            else:
                new_binding = binding
            yield from self._join(rest, new_binding, rest_delta)

    # -- rules -------------------------------------------------------------

    def _resolve_mint(self, term: Mint, binding: dict) -> str:
        parts = []
        for part in term.parts:
            value = binding[part.name] if isinstance(part, Var) else part
            parts.append(str(value))
        return mint_id(term.kind, *parts)

    def rule_consequences(self, rule: Rule) -> set:
        """All head facts the rule would assert against the current store.

        Purely analytical: nothing is added, and Mint terms resolve to the
        ids they *would* mint.
        """

        out = set()
        for binding in self._join(rule.body, {}, None):
            for s, p, o in rule.head:
                out.add((self._resolve_head_term(s, binding),
                         p,
                         self._resolve_head_term(o, binding)))
        return out

    def _resolve_head_term(self, term, binding):
        if isinstance(term, Var):
            return binding[term.name]
        if isinstance(term, Mint):
            return self._resolve_mint(term, binding)
        return term

    def run_rules(self, rules: Iterable[Rule]) -> DerivationReport:
        """Semi-naive forward chaining to fixpoint.

        Each round matches every rule with at least one body pattern
        restricted to the facts derived in the previous round, so already
        explored joins are not redone.  Rule firing is monotone (facts are
        only added) and entity minting is deterministic, which makes the
        whole run idempotent and insensitive to fact insertion order.
        """

        rules = tuple(rules)
        seen = set()
        for rule in rules:
            if rule.name in seen:
                raise KnowledgeError(f"duplicate rule name: {rule.name!r}")
            seen.add(rule.name)
        report = DerivationReport()
        delta = set(self._facts)
        first_round = True
        while delta:
            report.rounds += 1
            delta_by_pred: dict = {}
            for fs, fp, fo in delta:
                delta_by_pred.setdefault(fp, []).append((fs, fo))
            pending: list = []  # (rule name, binding, head) triples to fire
            for rule in rules:
                matched = set()
                positions = range(1) if first_round else range(len(rule.body))
                for pos in positions:
                    for binding in self._join(rule.body, {}, (pos, delta_by_pred)):
                        key = frozenset(binding.items())
                        if key not in matched:
                            matched.add(key)
                            pending.append((rule, binding))
            delta = set()
            for rule, binding in pending:
                for s, p, o in rule.head:
                    subject = self._fire_term(s, binding, report, delta)
                    obj = self._fire_term(o, binding, report, delta)
                    self._validate_fact(subject, p, obj)
                    if self._add(subject, p, obj):
                        report.derivations.append(Derivation(rule.name, subject, p, obj))
                        delta.add((subject, p, obj))
            first_round = False
        return report

    def _fire_term(self, term, binding, report, delta):
        if isinstance(term, Var):
            return binding[term.name]
        if isinstance(term, Mint):
            eid = self._resolve_mint(term, binding)
            if self._ensure_entity(eid, term.kind):
                report.minted.append((eid, term.kind))
                delta.add((eid, "hasKind", term.kind))
            return eid
        return term

    # -- serialization -----------------------------------------------------

    def to_tsv(self) -> str:
        """One assertion per line: subject, predicate, object kind, object."""

        rows = []
        for subject, predicate, obj in self._facts:
            if PREDICATES[predicate] == "entity" and predicate != "hasKind":
                kind_tag = "entity"
                text = obj
            elif isinstance(obj, bool):
                kind_tag, text = "bool", repr(obj)
            elif isinstance(obj, int):
                kind_tag, text = "int", repr(obj)
            elif isinstance(obj, float):
                kind_tag, text = "float", repr(obj)
            else:
                kind_tag, text = "str", obj
            rows.append(
                "\t".join((_escape_field(subject), predicate, kind_tag, _escape_field(text)))
            )
        rows.sort()
        return "\n".join(rows) + ("\n" if rows else "")

    @classmethod
    def from_tsv(cls, text: str) -> "FactStore":
        store = cls()
        parsed = []
        for number, line in enumerate(text.splitlines(), start=1):
            if not line:
                continue
            fields = line.split("\t")
            if len(fields) != 4:
                raise KnowledgeError(f"line {number}: expected 4 tab-separated fields")
            subject, predicate, kind_tag, raw = fields
            try:
                subject = _unescape_field(subject)
                raw = _unescape_field(raw)
            except KnowledgeError as exc:
                raise KnowledgeError(f"line {number}: {exc}") from None
            if kind_tag == "entity" or kind_tag == "str":
                obj: Literal = raw
            elif kind_tag == "int":
                obj = int(raw)
            elif kind_tag == "float":
                obj = float(raw)
            elif kind_tag == "bool":
                if raw not in ("True", "False"):
                    raise KnowledgeError(f"line {number}: invalid bool literal {raw!r}")
                obj = raw == "True"
            else:
                raise KnowledgeError(f"line {number}: unknown object kind {kind_tag!r}")
            parsed.append((number, subject, predicate, obj))
        for number, subject, predicate, obj in parsed:
            if predicate == "hasKind":
                try:
                    store._ensure_entity(subject, obj)
                except KnowledgeError as exc:
                    raise KnowledgeError(f"line {number}: {exc}") from None
        for number, subject, predicate, obj in parsed:
            if predicate == "hasKind":
                continue
            try:
                store._validate_fact(subject, predicate, obj)
                store._add(subject, predicate, obj)
            except KnowledgeError as exc:
                raise KnowledgeError(f"line {number}: {exc}") from None
        return store


def _escape_field(text: str) -> str:
    return (
        text.replace("\\", "\\\\")
        .replace("\t", "\\t")
        .replace("\n", "\\n")
        .replace("\r", "\\r")
    )


def _unescape_field(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(text):
            raise KnowledgeError("dangling escape at end of field")
        nxt = text[i + 1]
        mapped = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt)
        if mapped is None:
            raise KnowledgeError(f"invalid escape sequence \\{nxt}")
        out.append(mapped)
        i += 2
    return "".join(out)


# ---------------------------------------------------------------------------
# Built-in rules
# ---------------------------------------------------------------------------

_P = Var("p")
_T = Var("t")
_EV = Var("ev")
_Q = Var("q")
_NET = Var("net")
_A = Var("a")
_C = Var("c")

#: Reconstruction rules run after a study's raw facts are loaded.  They link
#: people to the networks their answers generate, materialize the pairwise
#: relations named in network answers, and mint the characteristic/concept
#: holder entities that later stages attach levels and metric values to.
#:
#: Loaders assert ``generatesNetwork`` on the network-generating *question*;
#: the first rule lifts it to the questionnaire so that membership can be
#: read straight off attendance at one of the questionnaire's events.
BUILTIN_RULES = (
    Rule(
        name="questionnaire_generates_networks",
        body=(
            (_Q, "questionOf", Var("qn")),
            (_Q, "generatesNetwork", _NET),
        ),
        head=((Var("qn"), "generatesNetwork", _NET),),
    ),
    Rule(
        name="member_of_network",
        body=(
            (_P, "answeredAt", _EV),
            (_EV, "ofQuestionnaire", _Q),
            (_Q, "generatesNetwork", _NET),
        ),
        head=((_P, "memberOfNetwork", _NET),),
    ),
    Rule(
        name="relationship_instances",
        body=(
            (_A, "answerBy", _P),
            (_A, "aboutPerson", _T),
            (_A, "forQuestion", _Q),
            (_Q, "generatesNetwork", _NET),
        ),
        head=((_P, "relatedTo", _T),),
    ),
    Rule(
        name="characteristic_instances",
        body=((_P, "memberOfNetwork", _NET),),
        head=(
            (Mint("SNACharacteristic", (_P, _NET)), "characterizesPerson", _P),
            (Mint("SNACharacteristic", (_P, _NET)), "inNetwork", _NET),
        ),
    ),
    Rule(
        name="assign_characteristics",
        body=(
            (_C, "characterizesPerson", _P),
            (_C, "inNetwork", _NET),
            (_P, "memberOfNetwork", _NET),
        ),
        head=((_P, "hasCharacteristic", _C),),
    ),
    Rule(
        name="answers_behind_characteristics",
        body=(
            (_C, "characterizesPerson", _P),
            (_C, "inNetwork", _NET),
            (_A, "answerBy", _P),
            (_A, "forQuestion", _Q),
            (_Q, "generatesNetwork", _NET),
        ),
        head=((_A, "relatedToCharacteristic", _C),),
    ),
    Rule(
        name="person_concept_instances",
        body=((_P, "memberOfNetwork", _NET),),
        head=(
            (Mint("SNAConcept", (_P, _NET)), "conceptOfPerson", _P),
            (Mint("SNAConcept", (_P, _NET)), "conceptOfNetwork", _NET),
        ),
    ),
    Rule(
        name="network_concept_instances",
        body=((_Q, "generatesNetwork", _NET),),
        head=((Mint("SNAConcept", (_NET,)), "conceptOfNetwork", _NET),),
    ),
)


# ---------------------------------------------------------------------------
# Metric write-back
# ---------------------------------------------------------------------------

def write_back_metrics(store: FactStore, graph: SocialGraph) -> tuple:
    """Store an annotated graph's measures as SNAConcept entities.

    One concept per (person, network, node metric) plus one per graph-level
    metric.  Node labels must already be mapped to Person entities (ids
    minted from the label).  Returns the sorted concept ids written; calling
    it again with the same graph is a no-op.
    """

    if not graph.annotations and not any(n.annotations for n in graph.nodes):
        raise KnowledgeError(f"graph {graph.name!r} carries no annotations to write back")
    net = store.create_entity("Network", graph.name)
    store.assert_fact(net, "networkName", graph.name)
    concepts = []
    for metric in GRAPH_METRICS:
        if metric not in graph.annotations:
            continue
        concept = store.create_entity("SNAConcept", graph.name, metric)
        store.assert_fact(concept, "conceptOfNetwork", net)
        store.assert_fact(concept, "metricName", metric)
        store.assert_fact(concept, "metricValue", float(graph.annotations[metric]))
        concepts.append(concept)
    for node in graph.nodes:
        person = mint_id("Person", node.label)
        if not store.has_entity(person):
            raise KnowledgeError(f"no Person entity for node {node.label!r}")
        for metric in NODE_METRICS:
            if metric not in node.annotations:
                continue
            concept = store.create_entity("SNAConcept", graph.name, node.label, metric)
            store.assert_fact(concept, "conceptOfPerson", person)
            store.assert_fact(concept, "conceptOfNetwork", net)
            store.assert_fact(concept, "metricName", metric)
            store.assert_fact(concept, "metricValue", float(node.annotations[metric]))
            concepts.append(concept)
    return tuple(sorted(concepts))
