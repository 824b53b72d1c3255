"""Study lifecycle: roster intake, response collection, analysis, storage.

A *study* tracks one classroom through the whole workflow: import a roster
(pseudonymizing real names on the way in), collect questionnaire responses
over one or more dated events, then analyze -- scoring the instruments,
building the relationship networks, annotating them with measures, running
the inference rules, and rendering one report per student.  Each analysis
is captured as a versioned snapshot inside the study's single JSON bundle;
a re-run over unchanged data returns the existing snapshot byte for byte.

Real names never enter the bundle.  They live in a separate identity file
next to it, written once at roster import and read by nothing else here.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import random
import tempfile
import threading
import uuid
from collections import Counter
from dataclasses import asdict, dataclass, field
from datetime import date as _date
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .builder import (
    attach_attributes,
    build_consumption,
    build_friendship,
    derive_tie_levels,
)
from .errors import (
    StudyError,
    StudyStateError,
    SurveyError,
    UnknownIdError,
    ValidationFailed,
)
from .formats import export_csv, export_pajek
from .graph import SocialGraph
from .kb import BUILTIN_RULES, FactStore, write_back_metrics
from .metrics import annotate
from .profiles import find_influencers, find_mediators, social_profiles
from .report import render_report
from .survey import (
    DRINK_WITH_QUESTION,
    TIME_SPENT_QUESTION,
    AnswerRecord,
    Question,
    Questionnaire,
    QuestionnaireEvent,
    RosterMember,
    build_person_profiles,
    default_questionnaire,
    validate_response_set,
)

BUNDLE_SCHEMA = "peerscope-study/1"

#: Environment variable naming the directory studies are stored in.
DATA_DIR_ENV = "PEERSCOPE_DATA"
DEFAULT_DATA_DIR = "peerscope-data"

ROSTER_HEADER = ("pseudonym", "full_name", "age", "gender", "class")

STATUSES = ("draft", "collecting", "analyzed")

#: Surnames handed out as pseudonyms.  Drawn without replacement, so one
#: pool entry covers exactly one student; rosters larger than the pool are
#: refused rather than recycled.
SURNAME_POOL = (
    "Abbott", "Acevedo", "Atkins", "Ayers", "Barnett", "Barron",
    "Bartlett", "Bender", "Blackwell", "Bonner", "Bowers", "Branch",
    "Bray", "Brennan", "Buckley", "Burch", "Byers", "Camacho",
    "Carey", "Carver", "Chavez", "Clayton", "Combs", "Conley",
    "Cortez", "Crosby", "Dalton", "Dawson", "Dennis", "Dorsey",
    "Dotson", "Doyle", "Dudley", "Duffy", "Dunlap", "Eaton",
    "Ellison", "Erickson", "Espinoza", "Estes", "Ewing", "Farley",
    "Fields", "Finch", "Fleming", "Foster", "Franco", "Frost",
    "Gaines", "Gamble", "Gay", "Gentry", "Gibbs", "Glenn",
    "Goff", "Guerra", "Hahn", "Hall", "Hampton", "Haney",
    "Hardin", "Harmon", "Hartman", "Hayden", "Hernandez", "Hickman",
    "Hinton", "Hobbs", "Hodge", "Holder", "Hollis", "Hopper",
    "Horne", "Howe", "Hubbard", "Huffman", "Hull", "Hurst",
    "Ingram", "Jarvis", "Johnson", "Justice", "Keith", "Kemp",
    "Kent", "Kirby", "Knapp", "Koch", "Landry", "Lang",
    "Larsen", "Leach", "Levine", "Lott", "Lucero", "Lynch",
)

#: Networks generated by each roster-repeated question.  The three tie
#: levels are cuts of the time-spent answers, so they hang off the same
#: question.
_QUESTION_NETWORKS = {
    TIME_SPENT_QUESTION: ("friendship", "acquaintances", "partners", "friends"),
    DRINK_WITH_QUESTION: ("consumption",),
}


def anonymize(names: Sequence[str], seed: int, pool: Sequence[str] = SURNAME_POOL) -> dict:
    """Map real names onto surnames drawn deterministically from ``pool``.

    The same (names, seed, pool) triple always yields the same mapping.
    Names must be unique and non-empty; a roster longer than the pool is
    refused so the caller can supply a larger pool.
    """
    names = list(names)
    for name in names:
        if not name or not name.strip():
            raise StudyError("cannot anonymize an empty name")
    counts = Counter(names)
    if len(counts) != len(names):
        dupe = next(n for n, c in counts.items() if c > 1)
        raise StudyError(f"duplicate name in roster: {dupe!r}")
    if len(names) > len(pool):
        raise StudyError(
            f"roster has {len(names)} people but the pseudonym pool holds only "
            f"{len(pool)}; supply a larger pool"
        )
    rng = random.Random(seed)
    return dict(zip(names, rng.sample(list(pool), len(names))))


@dataclass
class Study:
    """One classroom study and everything collected for it."""

    id: str
    title: str
    created: str
    seed: int
    status: str = "draft"
    roster: list = field(default_factory=list)
    questionnaire: Questionnaire = field(default_factory=default_questionnaire)
    events: list = field(default_factory=list)
    answers: list = field(default_factory=list)
    results: list = field(default_factory=list)

    def latest_results(self) -> dict:
        if not self.results:
            raise StudyStateError(f"study {self.id!r} has not been analyzed yet")
        return self.results[-1]

    # -- bundle codec ------------------------------------------------------

    def to_bundle(self) -> dict:
        return {
            "schema": BUNDLE_SCHEMA,
            "id": self.id,
            "title": self.title,
            "created": self.created,
            "seed": self.seed,
            "status": self.status,
            "roster": [
                {
                    "pseudonym": m.pseudonym,
                    "age": m.age,
                    "gender": m.gender,
                    "class": m.class_ref,
                }
                for m in self.roster
            ],
            "questionnaire": {
                "id": self.questionnaire.id,
                "title": self.questionnaire.title,
                "questions": [
                    {
                        "id": q.id,
                        "text": q.text,
                        "kind": q.kind,
                        "options": [list(o) for o in q.options],
                        "repeat_over_roster": q.repeat_over_roster,
                    }
                    for q in self.questionnaire.questions
                ],
            },
            "events": list(self.events),
            "answers": [
                {
                    "person": a.person,
                    "date": a.event.date,
                    "question": a.question,
                    "value": a.value,
                    "target": a.target,
                }
                for a in self.answers
            ],
            "results": self.results,
        }

    @classmethod
    def from_bundle(cls, data: Mapping) -> "Study":
        if data.get("schema") != BUNDLE_SCHEMA:
            raise StudyError(f"unsupported bundle schema {data.get('schema')!r}")
        qd = data["questionnaire"]
        questionnaire = Questionnaire(
            qd["id"],
            qd["title"],
            tuple(
                Question(
                    q["id"],
                    q["text"],
                    q["kind"],
                    tuple((label, value) for label, value in q["options"]),
                    q["repeat_over_roster"],
                )
                for q in qd["questions"]
            ),
        )
        roster = [
            RosterMember(m["pseudonym"], m["age"], m["gender"], m["class"])
            for m in data["roster"]
        ]
        answers = [
            AnswerRecord(
                a["person"],
                QuestionnaireEvent(questionnaire.id, a["date"]),
                a["question"],
                a["value"],
                a["target"],
            )
            for a in data["answers"]
        ]
        return cls(
            id=data["id"],
            title=data["title"],
            created=data["created"],
            seed=data["seed"],
            status=data["status"],
            roster=roster,
            questionnaire=questionnaire,
            events=list(data["events"]),
            answers=answers,
            results=list(data["results"]),
        )


# -- roster CSV ------------------------------------------------------------


def _parse_roster_csv(text: str) -> list:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows:
        raise StudyError("empty roster CSV")
    header = tuple(cell.strip() for cell in rows[0])
    if header != ROSTER_HEADER:
        raise StudyError(
            f"roster CSV header must be {','.join(ROSTER_HEADER)!r}, "
            f"got {','.join(header)!r}"
        )
    parsed = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(ROSTER_HEADER):
            raise StudyError(f"roster line {lineno}: expected {len(ROSTER_HEADER)} fields")
        pseudonym, full_name, age, gender, class_ref = (cell.strip() for cell in row)
        if not pseudonym and not full_name:
            raise StudyError(f"roster line {lineno}: needs a pseudonym or a full name")
        if pseudonym and ("\t" in pseudonym or "\n" in pseudonym):
            raise StudyError(f"roster line {lineno}: pseudonym cannot contain tabs or newlines")
        if age:
            try:
                age_value = int(age)
            except ValueError:
                raise StudyError(f"roster line {lineno}: bad age {age!r}") from None
        else:
            age_value = None
        parsed.append(
            {
                "pseudonym": pseudonym or None,
                "full_name": full_name or None,
                "age": age_value,
                "gender": gender or None,
                "class": class_ref or None,
            }
        )
    return parsed


# -- analysis --------------------------------------------------------------


def _current_answers(answers: Iterable[AnswerRecord]) -> list:
    """Latest answer per (person, question, target); later dates win.

    Repeat questionnaire events overwrite earlier contact declarations, so
    networks always reflect the newest event each pair was asked at.
    """
    chosen: dict = {}
    for a in answers:
        key = (a.person, a.question, a.target)
        if key not in chosen or a.event.date >= chosen[key].event.date:
            chosen[key] = a
    return list(chosen.values())


def _seed_fact_store(study: Study, profiles: Mapping) -> FactStore:
    """All ground facts for one study: people, instrument results, answers."""
    store = FactStore()
    qn = study.questionnaire
    qn_id = store.create_entity("Questionnaire", qn.id)
    store.assert_fact(qn_id, "hasText", qn.title)

    class_ids = {}
    for ref in sorted({m.class_ref for m in study.roster if m.class_ref}):
        class_ids[ref] = store.create_entity("ClassOnSchool", ref)
    for m in study.roster:
        pid = store.create_entity("Person", m.pseudonym)
        store.assert_fact(pid, "hasPseudonym", m.pseudonym)
        if m.age is not None:
            store.assert_fact(pid, "hasAge", m.age)
        if m.gender is not None:
            store.assert_fact(pid, "hasGender", m.gender)
        if m.class_ref is not None:
            store.assert_fact(pid, "memberOf", class_ids[m.class_ref])

    net_ids = {}
    question_ids = {}
    for q in qn.questions:
        kind = "QuestionSNA" if q.kind == "network_generating" else "Question"
        qid = store.create_entity(kind, q.id)
        question_ids[q.id] = qid
        store.assert_fact(qid, "questionOf", qn_id)
        store.assert_fact(qid, "hasText", q.text)
        store.assert_fact(qid, "hasKindOfQuestion", q.kind)
        for net in _QUESTION_NETWORKS.get(q.id, ()):
            if net not in net_ids:
                net_ids[net] = store.create_entity("Network", net)
                store.assert_fact(net_ids[net], "networkName", net)
            store.assert_fact(qid, "generatesNetwork", net_ids[net])

    event_ids = {}
    for day in sorted({a.event.date for a in study.answers}):
        eid = store.create_entity("QuestionnairePastEvent", qn.id, day)
        store.assert_fact(eid, "ofQuestionnaire", qn_id)
        store.assert_fact(eid, "atDate", day)
        event_ids[day] = eid
    for person, day in sorted({(a.person, a.event.date) for a in study.answers}):
        store.assert_fact(store.create_entity("Person", person), "answeredAt", event_ids[day])

    network_q = {q.id for q in qn.network_questions()}
    for a in sorted(
        (a for a in study.answers if a.question in network_q),
        key=lambda a: (a.event.date, a.question, a.person, a.target or ""),
    ):
        aid = store.create_entity(
            "AnswerOfPersonToQuestion", a.question, a.event.date, a.person, a.target
        )
        store.assert_fact(aid, "answerBy", store.create_entity("Person", a.person))
        store.assert_fact(aid, "aboutPerson", store.create_entity("Person", a.target))
        store.assert_fact(aid, "forQuestion", question_ids[a.question])
        store.assert_fact(aid, "atEvent", event_ids[a.event.date])
        predicate = "hasWeight" if a.question == TIME_SPENT_QUESTION else "hasValue"
        store.assert_fact(aid, predicate, a.value)

    # Scalar instruments enter as scored summaries, not raw items.
    for pseudonym in sorted(profiles):
        prof = profiles[pseudonym]
        pid = store.create_entity("Person", pseudonym)
        if prof.audit is not None:
            store.assert_fact(pid, "hasAuditScore", prof.audit.score)
            store.assert_fact(pid, "hasAuditZone", prof.audit.zone)
        if prof.fas is not None:
            store.assert_fact(pid, "hasFasScore", prof.fas.score)
            store.assert_fact(pid, "hasFasBand", prof.fas.band)
        if prof.kidscreen is not None:
            store.assert_fact(pid, "hasKidscreenTotal", prof.kidscreen.total)
        if prof.self_efficacy is not None:
            store.assert_fact(pid, "hasSelfEfficacy", prof.self_efficacy)
    return store


def analyze_study(study: Study) -> dict:
    """Run the full pipeline over a study's current answers.

    Pure function of (roster, questionnaire, answers, seed): the returned
    snapshot is byte-for-byte reproducible.  Raises
    :class:`~peerscope.errors.ValidationFailed` when the answer set has
    blocking problems.
    """
    report = validate_response_set(study.answers, study.roster, study.questionnaire)
    if report.blocking:
        raise ValidationFailed(report)

    profiles = build_person_profiles(study.roster, study.answers, study.questionnaire)
    current = _current_answers(study.answers)
    friendship = build_friendship(current, study.roster)
    graphs = {"friendship": friendship}
    graphs.update(derive_tie_levels(friendship))
    graphs["consumption"] = build_consumption(current, study.roster)
    graphs = {
        name: annotate(attach_attributes(g, profiles)) for name, g in graphs.items()
    }

    zones = {p: prof.audit.zone for p, prof in profiles.items() if prof.audit is not None}
    social = social_profiles(graphs["friendship"])

    friendship_g = graphs["friendship"]
    friends_g = graphs["friends"]
    suggestions = {}
    reports = {}
    for member in study.roster:
        p = member.pseudonym
        mediators = find_mediators(friendship_g, p)
        influencers = find_influencers(friendship_g, graphs["consumption"], zones, p)
        suggestions[p] = {"mediators": list(mediators), "influencers": list(influencers)}

        v = friendship_g.node_id(p)
        alters = set(friendship_g.out_neighbors(v)) | set(friendship_g.in_neighbors(v))
        friend_genders = [
            g for g in (friendship_g.node(u).attrs.get("gender") for u in sorted(alters))
            if g is not None
        ]
        fv = friends_g.node_id(p)
        friend_zones = [
            z for z in (
                zones.get(friends_g.node(u).label)
                for u in sorted(friends_g.neighbors(fv))
            )
            if z is not None
        ]
        reports[p] = render_report(
            profiles[p],
            social[p],
            friend_genders=friend_genders,
            friend_zones=friend_zones,
            influencer_zones=[zones[i] for i in influencers if i in zones],
        )

    store = _seed_fact_store(study, profiles)
    store.run_rules(BUILTIN_RULES)
    for name in sorted(graphs):
        write_back_metrics(store, graphs[name])

    summary = {
        "people": len(study.roster),
        "answers": len(study.answers),
        "events": sorted({a.event.date for a in study.answers}),
        "graphs": {
            name: {"nodes": g.n, "ties": g.m, **g.annotations}
            for name, g in graphs.items()
        },
    }
    return {
        "summary": summary,
        "graphs": {name: g.to_dict() for name, g in graphs.items()},
        "profiles": {p: asdict(prof) for p, prof in profiles.items()},
        "social": {p: asdict(sp) for p, sp in social.items()},
        "suggestions": suggestions,
        "reports": reports,
        "facts": store.to_tsv(),
    }


# -- persistent store --------------------------------------------------------

_LOCKS: dict = {}
_LOCKS_GUARD = threading.Lock()


def _lock_for(path: Path) -> threading.RLock:
    key = str(path)
    with _LOCKS_GUARD:
        if key not in _LOCKS:
            _LOCKS[key] = threading.RLock()
        return _LOCKS[key]


class StudyStore:
    """Directory of study bundles, one JSON file per study.

    Writes go through a temp file and an atomic rename, guarded by one
    in-process lock per study; reads take no lock and always see a complete
    bundle.
    """

    def __init__(self, root=None):
        if root is None:
            root = os.environ.get(DATA_DIR_ENV) or DEFAULT_DATA_DIR
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    # -- paths ---------------------------------------------------------

    def _bundle_path(self, study_id: str) -> Path:
        return self.root / f"{study_id}.study.json"

    def identity_path(self, study_id: str) -> Path:
        return self.root / f"{study_id}.identity.csv"

    # -- basic lifecycle -------------------------------------------------

    def create(self, title: str) -> Study:
        if not title or not title.strip():
            raise StudyError("study needs a title")
        study_id = uuid.uuid4().hex[:12]
        seed = int.from_bytes(hashlib.sha256(study_id.encode()).digest()[:8], "big")
        study = Study(
            id=study_id,
            title=title.strip(),
            created=_date.today().isoformat(),
            seed=seed,
        )
        self.save(study)
        return study

    def get(self, study_id: str) -> Study:
        path = self._bundle_path(study_id)
        if not path.exists():
            raise UnknownIdError(f"no study {study_id!r}")
        with open(path, encoding="utf-8") as fh:
            return Study.from_bundle(json.load(fh))

    def list_ids(self) -> list:
        return sorted(p.name[: -len(".study.json")] for p in self.root.glob("*.study.json"))

    def save(self, study: Study) -> None:
        path = self._bundle_path(study.id)
        payload = json.dumps(study.to_bundle(), sort_keys=True, indent=1)
        with _lock_for(path):
            fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    fh.write(payload)
                os.replace(tmp, path)
            except BaseException:
                if os.path.exists(tmp):
                    os.unlink(tmp)
                raise

    # -- roster ----------------------------------------------------------

    def import_roster(self, study_id: str, csv_text: str) -> Study:
        """Replace the roster from CSV, drawing pseudonyms where missing.

        Rows carrying only a full name get a pseudonym from the pool; the
        name-to-pseudonym map goes to the identity file, which is the only
        place real names are ever written.
        """
        with _lock_for(self._bundle_path(study_id)):
            study = self.get(study_id)
            if study.status == "analyzed":
                raise StudyStateError(
                    "roster is frozen once a study has been analyzed"
                )
            rows = _parse_roster_csv(csv_text)

            provided = [r["pseudonym"] for r in rows if r["pseudonym"]]
            if len(set(provided)) != len(provided):
                raise StudyError("duplicate pseudonym in roster CSV")
            names = [r["full_name"] for r in rows if r["full_name"]]
            if len(set(names)) != len(names):
                raise StudyError("duplicate full name in roster CSV")

            unnamed = [r["full_name"] for r in rows if not r["pseudonym"]]
            pool = tuple(s for s in SURNAME_POOL if s not in set(provided))
            assigned = anonymize(unnamed, study.seed, pool)

            members = []
            identity = []
            for r in rows:
                pseudonym = r["pseudonym"] or assigned[r["full_name"]]
                members.append(
                    RosterMember(pseudonym, r["age"], r["gender"], r["class"])
                )
                if r["full_name"]:
                    identity.append((pseudonym, r["full_name"]))

            study.roster = members
            study.status = "collecting"
            self.save(study)
            self._write_identity(study.id, identity)
            return study

    def _write_identity(self, study_id: str, pairs: list) -> None:
        path = self.identity_path(study_id)
        if not pairs:
            if path.exists():
                path.unlink()
            return
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["pseudonym", "full_name"])
        writer.writerows(pairs)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
        os.replace(tmp, path)

    # -- responses ---------------------------------------------------------

    def import_responses(self, study_id: str, date: str, records: Iterable[Mapping]) -> tuple:
        """Add one dated batch of answers; returns (study, validation report).

        The batch is validated together with everything already collected.
        Record-level problems (unknown people or questions, bad values,
        self-references, in-batch duplicates) reject the whole batch;
        set-level gaps like students who have not answered yet are reported
        but do not block collection.
        """
        with _lock_for(self._bundle_path(study_id)):
            study = self.get(study_id)
            if study.status == "draft":
                raise StudyStateError("import a roster before importing responses")
            event = QuestionnaireEvent(study.questionnaire.id, date)

            batch = []
            self_targets = []
            seen_keys = set()
            for rec in records:
                try:
                    person = rec["person"]
                    question = rec["question"]
                    value = rec["value"]
                except KeyError as exc:
                    raise StudyError(f"answer record missing field {exc.args[0]!r}") from None
                target = rec.get("target") or None
                key = (person, question, target)
                if key in seen_keys:
                    raise StudyError(
                        f"duplicate answer in batch: {person!r} / {question!r}"
                        + (f" / {target!r}" if target else "")
                    )
                seen_keys.add(key)
                try:
                    batch.append(AnswerRecord(person, event, question, value, target))
                except SurveyError:
                    self_targets.append((person, question))

            merged = list(study.answers)
            index = {
                (a.person, a.event.date, a.question, a.target): i
                for i, a in enumerate(merged)
            }
            for a in batch:
                key = (a.person, a.event.date, a.question, a.target)
                if key in index:
                    merged[index[key]] = a
                else:
                    index[key] = len(merged)
                    merged.append(a)

            report = validate_response_set(merged, study.roster, study.questionnaire)
            for pair in self_targets:
                if pair not in report.self_targets:
                    report.self_targets.append(pair)
            record_level = (
                report.unknown_respondents
                or report.unknown_questions
                or report.unknown_targets
                or report.self_targets
                or report.duplicates
                or report.invalid_values
            )
            if record_level:
                raise ValidationFailed(report)

            study.answers = merged
            study.events = sorted(set(study.events) | {date})
            if study.status == "analyzed":
                study.status = "collecting"
            self.save(study)
            return study, report

    # -- analysis ------------------------------------------------------------

    def analyze(self, study_id: str) -> dict:
        """Analyze current data; appends a snapshot only when results changed."""
        with _lock_for(self._bundle_path(study_id)):
            study = self.get(study_id)
            if study.status == "draft":
                raise StudyStateError("cannot analyze a study without a roster")
            payload = analyze_study(study)
            canon = json.dumps(payload, sort_keys=True)
            if study.results:
                last = dict(study.results[-1])
                version = last.pop("version")
                if json.dumps(last, sort_keys=True) == canon:
                    study.status = "analyzed"
                    self.save(study)
                    return study.results[-1]
            snapshot = dict(payload)
            snapshot["version"] = len(study.results) + 1
            # normalize through the JSON codec so stored and reloaded
            # snapshots compare equal (tuples become lists exactly once)
            snapshot = json.loads(json.dumps(snapshot, sort_keys=True))
            study.results.append(snapshot)
            study.status = "analyzed"
            self.save(study)
            return snapshot

    # -- exports ---------------------------------------------------------

    def graph_names(self, study_id: str) -> list:
        results = self.get(study_id).latest_results()
        return sorted(results["graphs"])

    def graph(self, study_id: str, name: str) -> dict:
        results = self.get(study_id).latest_results()
        try:
            return results["graphs"][name]
        except KeyError:
            raise UnknownIdError(f"no graph {name!r} in study {study_id!r}") from None

    def export_graph(self, study_id: str, name: str, fmt: str = "pajek") -> str:
        g = SocialGraph.from_dict(self.graph(study_id, name))
        if fmt == "pajek":
            return export_pajek(g)
        if fmt == "csv":
            return export_csv(g)
        raise StudyError(f"unknown export format {fmt!r}")
