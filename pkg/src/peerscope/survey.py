"""Questionnaire model, answer validation, and standardized-test scoring.

Covers the classroom test battery: the AUDIT alcohol-use screen with its
four risk zones, the FAS II family-affluence scale, the KIDSCREEN-27
quality-of-life scales, a short self-efficacy set, substance-use items,
and the two network-generating questions (time spent together, would
drink together) that later turn into graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date as _date
from typing import Iterable, Mapping, Sequence

from .errors import SurveyError

QUESTION_KINDS = ("choice", "likert", "numeric", "network_generating")

# Five contact-intensity statements; the weight grades the tie.
TIE_SCALE = (
    ("We never spend time together", 1),
    ("We sometimes spend time together", 2),
    ("We use to spend quite a lot of time together", 3),
    ("We are almost always together", 4),
    ("We are always together", 5),
)

YES_NO = (("No", 0), ("Yes", 1))


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    kind: str
    options: tuple[tuple[str, int], ...] = ()
    repeat_over_roster: bool = False

    def __post_init__(self):
        if self.kind not in QUESTION_KINDS:
            raise SurveyError(f"unknown question kind {self.kind!r}")
        if self.kind == "network_generating":
            if not self.repeat_over_roster:
                raise SurveyError("network questions repeat over the roster")
            if self.options not in (TIE_SCALE, YES_NO):
                raise SurveyError(
                    "network questions carry the five-statement contact scale "
                    "or a yes/no pair"
                )
        elif self.repeat_over_roster:
            raise SurveyError("only network questions repeat over the roster")
        if self.kind == "choice" and not self.options:
            raise SurveyError(f"choice question {self.id!r} needs options")
        for label, value in self.options:
            if not isinstance(value, int):
                raise SurveyError(f"option value {value!r} must be an integer")

    def valid_value(self, value) -> bool:
        if self.kind in ("choice", "network_generating"):
            return value in {v for _, v in self.options}
        if self.kind == "likert":
            return isinstance(value, int) and 1 <= value <= 5
        if self.kind == "numeric":
            return isinstance(value, int) and value >= 0
        return False

    def label_for(self, value) -> str | None:
        for label, v in self.options:
            if v == value:
                return label
        return None


@dataclass(frozen=True)
class Questionnaire:
    id: str
    title: str
    questions: tuple[Question, ...]

    def __post_init__(self):
        ids = [q.id for q in self.questions]
        if len(set(ids)) != len(ids):
            raise SurveyError("duplicate question id in questionnaire")

    def question(self, qid: str) -> Question:
        for q in self.questions:
            if q.id == qid:
                return q
        raise SurveyError(f"unknown question {qid!r}")

    def has_question(self, qid: str) -> bool:
        return any(q.id == qid for q in self.questions)

    def scalar_questions(self) -> tuple[Question, ...]:
        return tuple(q for q in self.questions if q.kind != "network_generating")

    def network_questions(self) -> tuple[Question, ...]:
        return tuple(q for q in self.questions if q.kind == "network_generating")


@dataclass(frozen=True, order=True)
class QuestionnaireEvent:
    questionnaire: str
    date: str  # ISO calendar date

    def __post_init__(self):
        try:
            _date.fromisoformat(self.date)
        except ValueError:
            raise SurveyError(f"bad event date {self.date!r}") from None


@dataclass(frozen=True)
class AnswerRecord:
    person: str
    event: QuestionnaireEvent
    question: str
    value: int | str
    target: str | None = None

    def __post_init__(self):
        if self.target is not None and self.target == self.person:
            raise SurveyError(f"{self.person!r} cannot answer about themselves")


@dataclass(frozen=True)
class RosterMember:
    pseudonym: str
    age: int | None = None
    gender: str | None = None
    class_ref: str | None = None

    def __post_init__(self):
        if not self.pseudonym:
            raise SurveyError("roster member needs a pseudonym")


# -- standardized instruments ------------------------------------------

AUDIT_ZONES = (
    (0, 7, "I", "Alcohol education"),
    (8, 15, "II", "Simple advice"),
    (16, 19, "III", "Simple advice plus brief counseling and continued monitoring"),
    (20, 40, "IV", "Referral to a specialist for diagnostic evaluation and treatment"),
)

FAS_ITEM_MAXIMA = (("car", 2), ("bedroom", 1), ("travel", 3), ("computers", 3))

FAS_BANDS = ((0, 2, "low"), (3, 5, "medium_low"), (6, 9, "high"))

KIDSCREEN_SCALES = (
    ("physical_wellbeing", 5),
    ("psychological_wellbeing", 7),
    ("autonomy_parents", 7),
    ("peers_social_support", 4),
    ("school_environment", 4),
)


@dataclass(frozen=True)
class AuditResult:
    score: int
    zone: str  # I | II | III | IV
    intervention: str


@dataclass(frozen=True)
class FasResult:
    score: int
    band: str  # low | medium_low | high


@dataclass(frozen=True)
class KidscreenResult:
    scales: Mapping[str, int]
    total: int


def score_audit(item_values: Sequence[int]) -> AuditResult:
    """Sum ten 0..4 items and map the total onto the four risk zones."""
    items = list(item_values)
    if len(items) != 10:
        raise SurveyError(f"AUDIT takes exactly 10 items, got {len(items)}")
    for i, v in enumerate(items):
        if not isinstance(v, int) or not 0 <= v <= 4:
            raise SurveyError(f"AUDIT item {i + 1} out of range 0..4: {v!r}")
    score = sum(items)
    for lo, hi, zone, intervention in AUDIT_ZONES:
        if lo <= score <= hi:
            return AuditResult(score=score, zone=zone, intervention=intervention)
    raise AssertionError("unreachable: zones cover 0..40")


def score_fas(item_values: Sequence[int]) -> FasResult:
    """Four affluence items (car 0-2, bedroom 0-1, travel 0-3, computers 0-3)."""
    items = list(item_values)
    if len(items) != len(FAS_ITEM_MAXIMA):
        raise SurveyError(f"FAS takes exactly 4 items, got {len(items)}")
    for v, (name, maximum) in zip(items, FAS_ITEM_MAXIMA):
        if not isinstance(v, int) or not 0 <= v <= maximum:
            raise SurveyError(f"FAS item {name!r} out of range 0..{maximum}: {v!r}")
    score = sum(items)
    for lo, hi, band in FAS_BANDS:
        if lo <= score <= hi:
            return FasResult(score=score, band=band)
    raise AssertionError("unreachable: bands cover 0..9")


def score_kidscreen(item_values: Sequence[int]) -> KidscreenResult:
    """27 Likert items (1..5) split over the five quality-of-life scales."""
    items = list(item_values)
    expected = sum(size for _, size in KIDSCREEN_SCALES)
    if len(items) != expected:
        raise SurveyError(f"KIDSCREEN takes exactly {expected} items, got {len(items)}")
    for i, v in enumerate(items):
        if not isinstance(v, int) or not 1 <= v <= 5:
            raise SurveyError(f"KIDSCREEN item {i + 1} out of range 1..5: {v!r}")
    scales = {}
    at = 0
    for name, size in KIDSCREEN_SCALES:
        scales[name] = sum(items[at : at + size])
        at += size
    return KidscreenResult(scales=scales, total=sum(items))


# -- the default classroom questionnaire --------------------------------

AUDIT_FREQUENCY_OPTIONS = (
    ("Never", 0),
    ("Monthly or less", 1),
    ("2 to 4 times a month", 2),
    ("2 to 3 times a week", 3),
    ("4 or more times a week", 4),
)

AUDIT_QUANTITY_OPTIONS = (
    ("1 or 2", 0),
    ("3 or 4", 1),
    ("5 or 6", 2),
    ("7 to 9", 3),
    ("10 or more", 4),
)

AUDIT_OCCURRENCE_OPTIONS = (
    ("Never", 0),
    ("Less than monthly", 1),
    ("Monthly", 2),
    ("Weekly", 3),
    ("Daily or almost daily", 4),
)

AUDIT_HARM_OPTIONS = (
    ("No", 0),
    ("Yes, but not in the last year", 2),
    ("Yes, during the last year", 4),
)

DRINK_PLACE_OPTIONS = (
    ("pub/disco", 0),
    ("street or park", 1),
    ("own home", 2),
    ("friends' home", 3),
    ("restaurant", 4),
)

FAMILY_DRINKING_OPTIONS = (
    ("Never", 0),
    ("Rarely", 1),
    ("Sometimes", 2),
    ("Often", 3),
    ("Daily", 4),
)

PLACE_OF_BIRTH_OPTIONS = (
    ("This town", 0),
    ("Elsewhere in the country", 1),
    ("Another country", 2),
)

TIME_SPENT_QUESTION = "time_spent"
DRINK_WITH_QUESTION = "drink_with"
AUDIT_QUESTIONS = tuple(f"audit_q{i}" for i in range(1, 11))
FAS_QUESTIONS = ("fas_car", "fas_bedroom", "fas_travel", "fas_computers")
KIDSCREEN_QUESTIONS = tuple(f"ks_{i:02d}" for i in range(1, 28))
SELF_EFFICACY_QUESTIONS = tuple(f"se_{i:02d}" for i in range(1, 6))
ESTUDES_FLAG_QUESTIONS = ("est_tried_alcohol", "est_tried_tobacco", "est_tried_cannabis")


def default_questionnaire() -> Questionnaire:
    questions = [
        Question(
            TIME_SPENT_QUESTION,
            "How much time do you spend with each of the following classmates?",
            "network_generating",
            TIE_SCALE,
            repeat_over_roster=True,
        ),
        Question(
            DRINK_WITH_QUESTION,
            "Would you go out for an alcoholic drink with this classmate?",
            "network_generating",
            YES_NO,
            repeat_over_roster=True,
        ),
        Question("audit_q1", "How often do you have a drink containing alcohol?", "choice", AUDIT_FREQUENCY_OPTIONS),
        Question("audit_q2", "How many drinks containing alcohol do you have on a typical day when you are drinking?", "choice", AUDIT_QUANTITY_OPTIONS),
        Question("audit_q3", "How often do you have six or more drinks on one occasion?", "choice", AUDIT_OCCURRENCE_OPTIONS),
        Question("audit_q4", "How often during the last year have you found that you were not able to stop drinking once you had started?", "choice", AUDIT_OCCURRENCE_OPTIONS),
        Question("audit_q5", "How often during the last year have you failed to do what was normally expected from you because of drinking?", "choice", AUDIT_OCCURRENCE_OPTIONS),
        Question("audit_q6", "How often during the last year have you needed a first drink in the morning to get yourself going after a heavy drinking session?", "choice", AUDIT_OCCURRENCE_OPTIONS),
        Question("audit_q7", "How often during the last year have you had a feeling of guilt or remorse after drinking?", "choice", AUDIT_OCCURRENCE_OPTIONS),
        Question("audit_q8", "How often during the last year have you been unable to remember what happened the night before because you had been drinking?", "choice", AUDIT_OCCURRENCE_OPTIONS),
        Question("audit_q9", "Have you or someone else been injured as a result of your drinking?", "choice", AUDIT_HARM_OPTIONS),
        Question("audit_q10", "Has a relative or friend or a doctor or another health worker been concerned about your drinking or suggested you cut down?", "choice", AUDIT_HARM_OPTIONS),
        Question("fas_car", "Does your family own a car, van or truck?", "choice", (("No", 0), ("Yes, one", 1), ("Yes, two or more", 2))),
        Question("fas_bedroom", "Do you have your own bedroom for yourself?", "choice", (("No", 0), ("Yes", 1))),
        Question("fas_travel", "During the past 12 months, how many times did you travel away on holiday with your family?", "choice", (("Not at all", 0), ("Once", 1), ("Twice", 2), ("More than twice", 3))),
        Question("fas_computers", "How many computers does your family own?", "choice", (("None", 0), ("One", 1), ("Two", 2), ("More than two", 3))),
        *(
            Question(qid, f"Quality of life item {i}", "likert")
            for i, qid in enumerate(KIDSCREEN_QUESTIONS, start=1)
        ),
        *(
            Question(qid, f"Self-efficacy item {i}", "likert")
            for i, qid in enumerate(SELF_EFFICACY_QUESTIONS, start=1)
        ),
        Question("est_tried_alcohol", "Have you ever tried an alcoholic drink?", "choice", YES_NO),
        Question("est_tried_tobacco", "Have you ever smoked tobacco?", "choice", YES_NO),
        Question("est_tried_cannabis", "Have you ever tried cannabis?", "choice", YES_NO),
        Question("est_first_drink_age", "How old were you when you tried an alcoholic drink for the first time?", "numeric"),
        Question("est_drink_places", "Where do you go for a drink most frequently?", "choice", DRINK_PLACE_OPTIONS),
        Question("place_of_birth", "Where were you born?", "choice", PLACE_OF_BIRTH_OPTIONS),
        Question("friends_outside", "How many friends do you have outside the classroom?", "numeric"),
        Question("drinking_mates_outside", "How many people do you drink with outside the classroom?", "numeric"),
        Question("family_drinking_freq", "How often does someone drink alcohol at home?", "choice", FAMILY_DRINKING_OPTIONS),
    ]
    return Questionnaire(
        id="classroom_battery",
        title="Classroom friendship and alcohol-use battery",
        questions=tuple(questions),
    )


# -- validation ----------------------------------------------------------


@dataclass
class ValidationReport:
    missing_respondents: list[str] = field(default_factory=list)
    missing_items: list[tuple[str, str]] = field(default_factory=list)
    unknown_respondents: list[str] = field(default_factory=list)
    unknown_questions: list[str] = field(default_factory=list)
    unknown_targets: list[tuple[str, str, str]] = field(default_factory=list)
    self_targets: list[tuple[str, str]] = field(default_factory=list)
    duplicates: list[dict] = field(default_factory=list)
    invalid_values: list[tuple[str, str, object]] = field(default_factory=list)

    @property
    def empty(self) -> bool:
        return not any(vars(self).values())

    @property
    def blocking(self) -> bool:
        """Everything except missing scalar items blocks analysis.

        Missing test items only invalidate that one instrument for that
        one person (conservative: flagged, never imputed); missing
        network answers mean no contact.
        """
        advisory = {"missing_items"}
        return any(v for k, v in vars(self).items() if k not in advisory)

    def as_dict(self) -> dict:
        return {
            "missing_respondents": list(self.missing_respondents),
            "missing_items": [list(x) for x in self.missing_items],
            "unknown_respondents": list(self.unknown_respondents),
            "unknown_questions": list(self.unknown_questions),
            "unknown_targets": [list(x) for x in self.unknown_targets],
            "self_targets": [list(x) for x in self.self_targets],
            "duplicates": list(self.duplicates),
            "invalid_values": [list(x) for x in self.invalid_values],
        }


def validate_response_set(
    answers: Iterable[AnswerRecord],
    roster: Sequence[RosterMember],
    questionnaire: Questionnaire,
) -> ValidationReport:
    report = ValidationReport()
    answers = list(answers)
    names = {m.pseudonym for m in roster}

    seen_counts: dict[tuple, list[str]] = {}
    responded: set[str] = set()
    answered_scalars: set[tuple[str, str]] = set()

    for a in answers:
        responded.add(a.person)
        if a.person not in names:
            if a.person not in report.unknown_respondents:
                report.unknown_respondents.append(a.person)
            continue
        if not questionnaire.has_question(a.question):
            if a.question not in report.unknown_questions:
                report.unknown_questions.append(a.question)
            continue
        q = questionnaire.question(a.question)

        if q.kind == "network_generating":
            if a.target is None:
                report.invalid_values.append((a.person, a.question, None))
                continue
            if a.target == a.person:
                report.self_targets.append((a.person, a.question))
                continue
            if a.target not in names:
                report.unknown_targets.append((a.person, a.question, a.target))
                continue
        elif a.target is not None:
            report.invalid_values.append((a.person, a.question, a.target))
            continue
        else:
            answered_scalars.add((a.person, a.question))

        if not q.valid_value(a.value):
            report.invalid_values.append((a.person, a.question, a.value))
            continue

        key = (a.person, a.event, a.question, a.target)
        seen_counts.setdefault(key, []).append(a.event.date)

    for (person, event, question, target), dates in sorted(
        seen_counts.items(), key=lambda kv: (kv[0][0], kv[0][2], kv[0][3] or "")
    ):
        if len(dates) > 1:
            report.duplicates.append(
                {
                    "person": person,
                    "question": question,
                    "target": target,
                    "dates": dates,
                }
            )

    report.missing_respondents = sorted(names - responded)
    for member in roster:
        if member.pseudonym not in responded:
            continue  # already reported as a missing respondent
        for q in questionnaire.scalar_questions():
            if (member.pseudonym, q.id) not in answered_scalars:
                report.missing_items.append((member.pseudonym, q.id))
    return report


# -- per-person profile assembly -----------------------------------------


@dataclass
class PersonProfile:
    person: str
    pseudonym: str
    age: int | None = None
    gender: str | None = None
    place_of_birth: str | None = None
    class_ref: str | None = None
    friends_outside: int | None = None
    drinking_mates_outside: int | None = None
    family_drinking_frequency: int | None = None
    audit: AuditResult | None = None
    audit_items: tuple[int, ...] | None = None
    fas: FasResult | None = None
    kidscreen: KidscreenResult | None = None
    self_efficacy: int | None = None
    estudes_flags: dict[str, bool] = field(default_factory=dict)
    first_drink_age: int | None = None
    drink_places: str | None = None
    incomplete: tuple[str, ...] = ()

    def __post_init__(self):
        for name in ("friends_outside", "drinking_mates_outside", "first_drink_age"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise SurveyError(f"{name} must be >= 0, got {value}")


def _latest_scalar_values(answers, questionnaire):
    """(person, question) -> value, later event dates winning."""
    chosen: dict[tuple[str, str], tuple[str, object]] = {}
    for a in answers:
        if a.target is not None or not questionnaire.has_question(a.question):
            continue
        key = (a.person, a.question)
        if key not in chosen or a.event.date >= chosen[key][0]:
            chosen[key] = (a.event.date, a.value)
    return {key: value for key, (_, value) in chosen.items()}


def build_person_profiles(
    roster: Sequence[RosterMember],
    answers: Iterable[AnswerRecord],
    questionnaire: Questionnaire,
) -> dict[str, PersonProfile]:
    """Score every instrument per roster member; missing items invalidate
    just that instrument (recorded in ``incomplete``), nothing is imputed."""
    values = _latest_scalar_values(list(answers), questionnaire)
    profiles: dict[str, PersonProfile] = {}

    def batch(person, qids):
        out = []
        for qid in qids:
            if (person, qid) not in values:
                return None
            out.append(values[(person, qid)])
        return out

    for member in roster:
        p = member.pseudonym
        incomplete = []

        audit = fas = kidscreen = None
        audit_items = batch(p, AUDIT_QUESTIONS)
        if audit_items is not None:
            audit = score_audit(audit_items)
        else:
            incomplete.append("audit")
        fas_items = batch(p, FAS_QUESTIONS)
        if fas_items is not None:
            fas = score_fas(fas_items)
        else:
            incomplete.append("fas")
        ks_items = batch(p, KIDSCREEN_QUESTIONS)
        if ks_items is not None:
            kidscreen = score_kidscreen(ks_items)
        else:
            incomplete.append("kidscreen")
        se_items = batch(p, SELF_EFFICACY_QUESTIONS)
        if se_items is None:
            incomplete.append("self_efficacy")

        def label(qid):
            value = values.get((p, qid))
            return None if value is None else questionnaire.question(qid).label_for(value)

        flags = {
            qid: bool(values[(p, qid)])
            for qid in ESTUDES_FLAG_QUESTIONS
            if (p, qid) in values
        }
        tried_alcohol = flags.get("est_tried_alcohol", True)

        profiles[p] = PersonProfile(
            person=p,
            pseudonym=p,
            age=member.age,
            gender=member.gender,
            class_ref=member.class_ref,
            place_of_birth=label("place_of_birth"),
            friends_outside=values.get((p, "friends_outside")),
            drinking_mates_outside=values.get((p, "drinking_mates_outside")),
            family_drinking_frequency=values.get((p, "family_drinking_freq")),
            audit=audit,
            audit_items=tuple(audit_items) if audit_items is not None else None,
            fas=fas,
            kidscreen=kidscreen,
            self_efficacy=sum(se_items) if se_items is not None else None,
            estudes_flags=flags,
            first_drink_age=values.get((p, "est_first_drink_age")) if tried_alcohol else None,
            drink_places=label("est_drink_places"),
            incomplete=tuple(incomplete),
        )
    return profiles
