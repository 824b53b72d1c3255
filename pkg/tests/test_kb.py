"""Fact store, query joins, rule engine, write-back, TSV round-trips."""

import itertools
import random

import pytest

from peerscope import SocialGraph
from peerscope.errors import KnowledgeError
from peerscope.kb import (
    BUILTIN_RULES,
    Derivation,
    FactStore,
    Mint,
    Rule,
    Var,
    mint_id,
    write_back_metrics,
)
from peerscope.metrics import annotate
from peerscope.vocab import GRAPH_METRICS, NODE_METRICS, PREDICATES

from .conftest import build_graph


def small_study_store():
    """A two-person study: both answered the friendship question about each other."""

    s = FactStore()
    ana = s.create_entity("Person", "Ana")
    bea = s.create_entity("Person", "Bea")
    s.assert_fact(ana, "hasPseudonym", "Ana")
    s.assert_fact(bea, "hasPseudonym", "Bea")
    qn = s.create_entity("Questionnaire", "battery")
    q = s.create_entity("QuestionSNA", "time_spent")
    s.assert_fact(q, "questionOf", qn)
    net = s.create_entity("Network", "friendship")
    s.assert_fact(q, "generatesNetwork", net)
    ev = s.create_entity("QuestionnairePastEvent", "battery", "2026-03-02")
    s.assert_fact(ev, "ofQuestionnaire", qn)
    s.assert_fact(ev, "atDate", "2026-03-02")
    for person, target in ((ana, bea), (bea, ana)):
        s.assert_fact(person, "answeredAt", ev)
        a = s.create_entity(
            "AnswerOfPersonToQuestion", "2026-03-02", "time_spent", person, target
        )
        s.assert_fact(a, "answerBy", person)
        s.assert_fact(a, "aboutPerson", target)
        s.assert_fact(a, "forQuestion", q)
        s.assert_fact(a, "atEvent", ev)
        s.assert_fact(a, "hasWeight", 4)
    return s, ana, bea, net


class TestEntities:
    def test_create_returns_deterministic_id(self):
        s = FactStore()
        assert s.create_entity("Person", "Ana") == "Person:Ana"
        assert s.kind_of("Person:Ana") == "Person"

    def test_recreate_is_noop(self):
        s = FactStore()
        s.create_entity("Person", "Ana")
        s.create_entity("Person", "Ana")
        assert s.entities() == [("Person:Ana", "Person")]

    def test_same_id_different_kind_rejected(self):
        s = FactStore()
        s.create_entity("Person", "Ana")
        with pytest.raises(KnowledgeError):
            s._ensure_entity("Person:Ana", "School")

    def test_unknown_kind_rejected(self):
        with pytest.raises(KnowledgeError):
            FactStore().create_entity("Wizard", "Ana")

    def test_entity_creation_asserts_kind_fact(self):
        s = FactStore()
        eid = s.create_entity("School", "IES-1")
        assert s.has_fact(eid, "hasKind", "School")

    def test_mint_id_escapes_colons(self):
        a = mint_id("SNAConcept", "Person:Ana", "Network:friendship")
        b = mint_id("SNAConcept", "Person", "Ana:Network:friendship")
        assert a != b

    def test_entities_of_kind(self):
        s, *_ = small_study_store()
        assert s.entities_of_kind("Person") == ["Person:Ana", "Person:Bea"]


class TestAssertions:
    def test_duplicate_fact_is_noop(self):
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        assert s.assert_fact(p, "hasAge", 14) is True
        assert s.assert_fact(p, "hasAge", 14) is False
        assert len(s) == 2  # hasKind + hasAge

    def test_unknown_predicate_rejected(self):
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        with pytest.raises(KnowledgeError, match="unknown predicate"):
            s.assert_fact(p, "likesPizza", True)

    def test_dangling_subject_rejected(self):
        with pytest.raises(KnowledgeError, match="unknown subject"):
            FactStore().assert_fact("Person:Ghost", "hasAge", 14)

    def test_dangling_object_rejected(self):
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        with pytest.raises(KnowledgeError, match="existing entity"):
            s.assert_fact(p, "memberOf", "ClassOnSchool:3A")

    def test_entity_predicate_refuses_literal_object(self):
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        with pytest.raises(KnowledgeError):
            s.assert_fact(p, "memberOf", 7)

    def test_has_kind_reserved(self):
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        with pytest.raises(KnowledgeError, match="managed by the store"):
            s.assert_fact(p, "hasKind", "School")

    def test_literal_fact_queryable(self):
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        s.assert_fact(p, "hasAge", 14)
        rows = s.query([(Var("who"), "hasAge", 14)])
        assert rows == [{"who": "Person:Ana"}]


def brute_force_query(store, patterns):
    """Oracle: try every combination of facts against the pattern list."""

    facts = list(store._facts)
    order = []
    for s, _p, o in patterns:
        for term in (s, o):
            if isinstance(term, Var) and term.name not in order:
                order.append(term.name)
    rows = set()
    for combo in itertools.product(facts, repeat=len(patterns)):
        binding = {}
        ok = True
        for (ps, pp, po), (fs, fp, fo) in zip(patterns, combo):
            if pp != fp:
                ok = False
                break
            for pat_term, fact_term in ((ps, fs), (po, fo)):
                if isinstance(pat_term, Var):
                    if pat_term.name in binding:
                        if binding[pat_term.name] != fact_term:
                            ok = False
                            break
                    else:
                        binding[pat_term.name] = fact_term
                elif pat_term != fact_term or type(pat_term) is not type(fact_term):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            rows.add(tuple(binding[v] for v in order))
    return sorted(rows)


class TestQuery:
    def test_single_pattern(self):
        s, ana, bea, net = small_study_store()
        rows = s.query([(Var("a"), "answerBy", ana)])
        assert len(rows) == 1
        assert s.kind_of(rows[0]["a"]) == "AnswerOfPersonToQuestion"

    def test_join_two_patterns(self):
        s, ana, bea, net = small_study_store()
        rows = s.query(
            [
                (Var("a"), "answerBy", Var("p")),
                (Var("a"), "aboutPerson", bea),
            ]
        )
        assert [r["p"] for r in rows] == [ana]

    def test_repeated_variable_must_agree(self):
        s, ana, bea, net = small_study_store()
        rows = s.query(
            [(Var("a"), "answerBy", Var("p")), (Var("a"), "aboutPerson", Var("p"))]
        )
        assert rows == []

    def test_results_sorted_and_unique(self):
        s, *_ = small_study_store()
        rows = s.query([(Var("x"), "hasKind", Var("k"))])
        keys = [(r["x"], r["k"]) for r in rows]
        assert keys == sorted(keys)
        assert len(keys) == len(set(keys))

    def test_unknown_predicate_in_query(self):
        s, *_ = small_study_store()
        with pytest.raises(KnowledgeError, match="unknown predicate"):
            s.query([(Var("x"), "flies", Var("y"))])

    def test_empty_pattern_list_rejected(self):
        with pytest.raises(KnowledgeError):
            FactStore().query([])

    def test_against_brute_force_oracle(self):
        s, ana, bea, net = small_study_store()
        cases = [
            [(Var("p"), "answeredAt", Var("ev"))],
            [(Var("a"), "answerBy", Var("p")), (Var("a"), "hasWeight", 4)],
            [
                (Var("p"), "answeredAt", Var("ev")),
                (Var("ev"), "ofQuestionnaire", Var("q")),
            ],
            [
                (Var("a"), "answerBy", Var("p")),
                (Var("a"), "aboutPerson", Var("t")),
                (Var("a"), "forQuestion", Var("q")),
            ],
            [(Var("x"), "hasKind", "Person"), (Var("x"), "hasPseudonym", Var("n"))],
        ]
        for patterns in cases:
            order = []
            for ps, _pp, po in patterns:
                for term in (ps, po):
                    if isinstance(term, Var) and term.name not in order:
                        order.append(term.name)
            got = [tuple(r[v] for v in order) for r in s.query(patterns)]
            assert got == brute_force_query(s, patterns), patterns

    def test_random_stores_match_oracle(self):
        rng = random.Random(97)
        people = [f"P{i}" for i in range(5)]
        for _ in range(25):
            s = FactStore()
            ids = [s.create_entity("Person", p) for p in people]
            cls = s.create_entity("ClassOnSchool", "3A")
            for pid in ids:
                if rng.random() < 0.7:
                    s.assert_fact(pid, "hasAge", rng.randint(13, 16))
                if rng.random() < 0.5:
                    s.assert_fact(pid, "memberOf", cls)
                if rng.random() < 0.6:
                    s.assert_fact(pid, "relatedTo", rng.choice(ids))
            patterns = [
                (Var("x"), "relatedTo", Var("y")),
                (Var("y"), "hasAge", Var("n")),
            ]
            got = [
                (r["x"], r["y"], r["n"]) for r in s.query(patterns)
            ]
            assert got == brute_force_query(s, patterns)


class TestRuleValidation:
    def test_unsafe_head_variable_rejected(self):
        with pytest.raises(KnowledgeError, match="unsafe rule"):
            Rule(
                name="bad",
                body=((Var("p"), "hasAge", 14),),
                head=((Var("p"), "relatedTo", Var("q")),),
            )

    def test_unsafe_mint_variable_rejected(self):
        with pytest.raises(KnowledgeError, match="unsafe rule"):
            Rule(
                name="bad",
                body=((Var("p"), "hasAge", 14),),
                head=(
                    (Mint("SNAConcept", (Var("missing"),)), "conceptOfPerson", Var("p")),
                ),
            )

    def test_head_cannot_write_kinds(self):
        with pytest.raises(KnowledgeError, match="hasKind"):
            Rule(
                name="bad",
                body=((Var("p"), "hasAge", 14),),
                head=((Var("p"), "hasKind", "School"),),
            )

    def test_unknown_predicate_in_body(self):
        with pytest.raises(KnowledgeError, match="unknown predicate"):
            Rule(
                name="bad",
                body=((Var("p"), "sings", Var("x")),),
                head=((Var("p"), "relatedTo", Var("x")),),
            )

    def test_empty_body_rejected(self):
        with pytest.raises(KnowledgeError):
            Rule(name="bad", body=(), head=((Var("p"), "hasAge", 1),))

    def test_mint_requires_known_kind(self):
        with pytest.raises(KnowledgeError):
            Mint("Wizard", (Var("p"),))


class TestRuleEngine:
    def test_membership_rule_alone(self):
        # with a questionnaire-level network fact already present, the
        # three-pattern membership rule suffices on its own
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        qn = s.create_entity("Questionnaire", "battery")
        net = s.create_entity("Network", "friendship")
        ev = s.create_entity("QuestionnairePastEvent", "battery", "2026-03-02")
        s.assert_fact(ev, "ofQuestionnaire", qn)
        s.assert_fact(qn, "generatesNetwork", net)
        s.assert_fact(p, "answeredAt", ev)
        rule = next(r for r in BUILTIN_RULES if r.name == "member_of_network")
        assert len(rule.body) == 3
        report = s.run_rules([rule])
        assert s.has_fact(p, "memberOfNetwork", net)
        assert report.by_rule() == {"member_of_network": 1}

    def test_membership_via_question_lift(self):
        s, ana, bea, net = small_study_store()
        report = s.run_rules(BUILTIN_RULES[:2])
        assert s.has_fact(ana, "memberOfNetwork", net)
        assert s.has_fact(bea, "memberOfNetwork", net)
        assert report.by_rule() == {
            "questionnaire_generates_networks": 1,
            "member_of_network": 2,
        }

    def test_derivations_carry_rule_name(self):
        s, ana, bea, net = small_study_store()
        report = s.run_rules(BUILTIN_RULES[:2])
        memberships = [d for d in report.derivations if d.rule == "member_of_network"]
        assert sorted(d.fact for d in memberships) == [
            (ana, "memberOfNetwork", net),
            (bea, "memberOfNetwork", net),
        ]

    def test_relationships_materialized(self):
        s, ana, bea, net = small_study_store()
        s.run_rules(BUILTIN_RULES)
        assert s.has_fact(ana, "relatedTo", bea)
        assert s.has_fact(bea, "relatedTo", ana)

    def test_minting_creates_typed_entities(self):
        s, ana, bea, net = small_study_store()
        report = s.run_rules(BUILTIN_RULES)
        kinds = {k for _e, k in report.minted}
        assert kinds == {"SNACharacteristic", "SNAConcept"}
        # one characteristic per person/network pair, one concept per pair
        # plus the network-level concept
        assert len(s.entities_of_kind("SNACharacteristic")) == 2
        assert len(s.entities_of_kind("SNAConcept")) == 3

    def test_cascade_needs_multiple_rounds(self):
        s, ana, bea, net = small_study_store()
        report = s.run_rules(BUILTIN_RULES)
        # characteristics depend on memberships derived in round one,
        # assignments depend on the characteristics, so at least three
        # productive rounds plus the empty closing round
        assert report.rounds >= 4
        chars = s.query([(ana, "hasCharacteristic", Var("c"))])
        assert len(chars) == 1
        assert s.kind_of(chars[0]["c"]) == "SNACharacteristic"

    def test_answers_linked_to_characteristics(self):
        s, ana, bea, net = small_study_store()
        s.run_rules(BUILTIN_RULES)
        rows = s.query(
            [
                (Var("a"), "relatedToCharacteristic", Var("c")),
                (Var("c"), "characterizesPerson", ana),
            ]
        )
        assert len(rows) == 1
        assert s.kind_of(rows[0]["a"]) == "AnswerOfPersonToQuestion"

    def test_fixpoint_idempotent(self):
        s, *_ = small_study_store()
        first = s.run_rules(BUILTIN_RULES)
        size = len(s)
        second = s.run_rules(BUILTIN_RULES)
        assert first.new_fact_count > 0
        assert second.new_fact_count == 0
        assert second.minted == []
        assert len(s) == size

    def test_soundness_of_derivations(self):
        s, *_ = small_study_store()
        report = s.run_rules(BUILTIN_RULES)
        by_name = {r.name: r for r in BUILTIN_RULES}
        for d in report.derivations:
            assert d.fact in s.rule_consequences(by_name[d.rule]), d

    def test_duplicate_rule_names_rejected(self):
        s = FactStore()
        with pytest.raises(KnowledgeError, match="duplicate rule name"):
            s.run_rules([BUILTIN_RULES[0], BUILTIN_RULES[0]])

    def test_head_type_violation_surfaces(self):
        # a rule binding a literal into an entity-typed head position fails
        # at run time with a vocabulary error
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        s.assert_fact(p, "hasAge", 14)
        rule = Rule(
            name="bad_types",
            body=((Var("p"), "hasAge", Var("n")),),
            head=((Var("p"), "relatedTo", Var("n")),),
        )
        with pytest.raises(KnowledgeError):
            s.run_rules([rule])


def random_study_store(rng):
    """A randomized small study used for the order-invariance property."""

    people = [f"P{i}" for i in range(rng.randint(2, 5))]
    dates = ["2026-03-02", "2026-05-11"][: rng.randint(1, 2)]
    ops = []  # (kind, parts) entity creations and (s, p, o) assertions

    def ent(kind, *parts):
        ops.append(("entity", kind, parts))
        return mint_id(kind, *parts)

    qn = ent("Questionnaire", "battery")
    q = ent("QuestionSNA", "time_spent")
    net = ent("Network", "friendship")
    ops.append(("fact", q, "questionOf", qn))
    ops.append(("fact", q, "generatesNetwork", net))
    pids = [ent("Person", p) for p in people]
    for date in dates:
        ev = ent("QuestionnairePastEvent", "battery", date)
        ops.append(("fact", ev, "ofQuestionnaire", qn))
        ops.append(("fact", ev, "atDate", date))
        for pid in pids:
            if rng.random() < 0.8:
                ops.append(("fact", pid, "answeredAt", ev))
            for tid in pids:
                if tid is not pid and rng.random() < 0.5:
                    a = ent("AnswerOfPersonToQuestion", date, "time_spent", pid, tid)
                    ops.append(("fact", a, "answerBy", pid))
                    ops.append(("fact", a, "aboutPerson", tid))
                    ops.append(("fact", a, "forQuestion", q))
                    ops.append(("fact", a, "atEvent", ev))
                    ops.append(("fact", a, "hasWeight", rng.randint(1, 5)))
    return ops


def build_from_ops(ops):
    store = FactStore()
    for op in ops:
        if op[0] == "entity":
            store.create_entity(op[1], *op[2])
        else:
            store.assert_fact(op[1], op[2], op[3])
    return store


class TestRuleEngineProperties:
    def test_insertion_order_invariance(self):
        rng = random.Random(61)
        for _ in range(20):
            ops = random_study_store(rng)
            a = build_from_ops(ops)
            # entity creations must precede facts that mention them; shuffle
            # facts only, which is where insertion order could plausibly leak
            entities = [op for op in ops if op[0] == "entity"]
            facts = [op for op in ops if op[0] == "fact"]
            rng.shuffle(facts)
            b = build_from_ops(entities + facts)
            a.run_rules(BUILTIN_RULES)
            b.run_rules(BUILTIN_RULES)
            assert a == b

    def test_monotone_and_idempotent(self):
        rng = random.Random(62)
        for _ in range(20):
            store = build_from_ops(random_study_store(rng))
            baseline = set(store._facts)
            report = store.run_rules(BUILTIN_RULES)
            assert baseline <= store._facts
            assert len(store._facts) == len(baseline) + report.new_fact_count + len(
                report.minted
            )
            again = store.run_rules(BUILTIN_RULES)
            assert again.new_fact_count == 0


class TestWriteBack:
    def seeded_store(self, labels):
        s = FactStore()
        for label in labels:
            s.create_entity("Person", label)
        return s

    def test_counts_for_three_node_cycle(self, cyc3):
        g = annotate(cyc3)
        s = self.seeded_store(["a", "b", "c"])
        concepts = write_back_metrics(s, g)
        assert len(concepts) == 3 * len(NODE_METRICS) + len(GRAPH_METRICS)
        assert len(s.entities_of_kind("SNAConcept")) == 27

    def test_idempotent(self, cyc3):
        g = annotate(cyc3)
        s = self.seeded_store(["a", "b", "c"])
        write_back_metrics(s, g)
        size = len(s)
        again = write_back_metrics(s, g)
        assert len(s) == size
        assert len(again) == 27

    def test_values_queryable(self, cyc3):
        g = annotate(cyc3)
        s = self.seeded_store(["a", "b", "c"])
        write_back_metrics(s, g)
        rows = s.query(
            [
                (Var("c"), "conceptOfPerson", "Person:a"),
                (Var("c"), "metricName", "closeness_out"),
                (Var("c"), "metricValue", Var("v")),
            ]
        )
        assert len(rows) == 1
        # directed 3-cycle: reaches both others at distances 1 and 2,
        # so (2/2) * (2/3)
        assert rows[0]["v"] == pytest.approx(2 / 3)

    def test_graph_level_concepts(self, cyc3):
        g = annotate(cyc3)
        s = self.seeded_store(["a", "b", "c"])
        write_back_metrics(s, g)
        rows = s.query(
            [
                (Var("c"), "conceptOfNetwork", "Network:cyc3"),
                (Var("c"), "metricName", "density"),
                (Var("c"), "metricValue", Var("v")),
            ]
        )
        assert rows[0]["v"] == 0.5

    def test_missing_person_mapping_is_error(self, cyc3):
        g = annotate(cyc3)
        s = self.seeded_store(["a", "b"])  # no entity for c
        with pytest.raises(KnowledgeError, match="no Person entity for node 'c'"):
            write_back_metrics(s, g)

    def test_unannotated_graph_rejected(self, cyc3):
        s = self.seeded_store(["a", "b", "c"])
        with pytest.raises(KnowledgeError, match="no annotations"):
            write_back_metrics(s, cyc3)


class TestSerialization:
    def test_round_trip_small_study(self):
        s, *_ = small_study_store()
        s.run_rules(BUILTIN_RULES)
        text = s.to_tsv()
        assert FactStore.from_tsv(text) == s

    def test_round_trip_with_metrics(self, cyc3):
        s = FactStore()
        for label in ("a", "b", "c"):
            s.create_entity("Person", label)
        write_back_metrics(s, annotate(cyc3))
        assert FactStore.from_tsv(s.to_tsv()) == s

    def test_format_shape(self):
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        s.assert_fact(p, "hasAge", 14)
        lines = s.to_tsv().splitlines()
        assert "Person:Ana\thasAge\tint\t14" in lines
        assert "Person:Ana\thasKind\tstr\tPerson" in lines
        assert all(len(line.split("\t")) == 4 for line in lines)

    def test_lines_sorted_and_trailing_newline(self):
        s, *_ = small_study_store()
        text = s.to_tsv()
        assert text.endswith("\n")
        lines = text.splitlines()
        assert lines == sorted(lines)

    def test_escapes_survive(self):
        s = FactStore()
        p = s.create_entity("Person", "Ana")
        s.assert_fact(p, "hasText", "line one\nline two\twith tab")
        back = FactStore.from_tsv(s.to_tsv())
        assert back.has_fact(p, "hasText", "line one\nline two\twith tab")

    def test_bad_line_reports_number(self):
        with pytest.raises(KnowledgeError, match="line 1"):
            FactStore.from_tsv("Person:Ana\thasAge\tint\n")

    def test_unknown_predicate_in_file(self):
        text = "Person:Ana\thasKind\tstr\tPerson\nPerson:Ana\tflies\tstr\tyes\n"
        with pytest.raises(KnowledgeError, match="line 2"):
            FactStore.from_tsv(text)

    def test_dangling_reference_in_file(self):
        text = (
            "Person:Ana\thasKind\tstr\tPerson\n"
            "Person:Ana\tmemberOf\tentity\tClassOnSchool:3A\n"
        )
        with pytest.raises(KnowledgeError, match="existing entity"):
            FactStore.from_tsv(text)

    def test_empty_store(self):
        assert FactStore.from_tsv("") == FactStore()
        assert FactStore().to_tsv() == ""


class TestVocabulary:
    def test_predicate_count_in_contract_range(self):
        assert 35 <= len(PREDICATES) <= 50

    def test_all_builtin_rules_use_known_predicates(self):
        for rule in BUILTIN_RULES:
            for s, p, o in rule.body + rule.head:
                assert p in PREDICATES
