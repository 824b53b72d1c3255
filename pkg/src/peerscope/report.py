"""Plain-language individual reports.

Every sentence shape lives in :data:`TEMPLATES` as a format string paired
with the regular expression that parses it back, so the renderer and any
consumer (tests, the API, the UI) agree on exactly one grammar.  Sentences
whose data is missing are omitted rather than rendered with placeholders;
:func:`parse_report` then simply returns ``None`` for those fields.
"""

from __future__ import annotations

import re
from typing import Optional, Sequence

from .profiles import SocialProfile, ZONE_ORDER
from .survey import AUDIT_FREQUENCY_OPTIONS, AUDIT_QUANTITY_OPTIONS, PersonProfile

#: Pronoun and agreement tables keyed by gender code (None = unknown).
PRONOUNS = {
    "F": {
        "subj": "She", "subj_lc": "she", "poss": "Her", "poss_lc": "her",
        "be": "is", "be_past": "was", "noun": "girl",
        "declares": "declares", "goes": "goes",
    },
    "M": {
        "subj": "He", "subj_lc": "he", "poss": "His", "poss_lc": "his",
        "be": "is", "be_past": "was", "noun": "boy",
        "declares": "declares", "goes": "goes",
    },
    None: {
        "subj": "They", "subj_lc": "they", "poss": "Their", "poss_lc": "their",
        "be": "are", "be_past": "were", "noun": "student",
        "declares": "declare", "goes": "go",
    },
}

#: Alcohol-consumption level word for each risk zone.
ZONE_LEVELS = {"I": "low", "II": "medium", "III": "high", "IV": "very high"}

#: Spelled-out drink counts for the quantity-per-occasion option labels.
QUANTITY_WORDS = {
    "1 or 2": "one or two",
    "3 or 4": "three or four",
    "5 or 6": "five or six",
    "7 to 9": "seven to nine",
    "10 or more": "ten or more",
}

POPULARITY_PHRASES = {"Low": "not a popular", "Medium": "a moderately popular", "High": "a popular"}

_NAME = r"[A-Z][A-Za-z'\-]*"

#: Sentence key -> (format template, parse-back pattern).
TEMPLATES = {
    "intro": (
        "{name} is a {age} year old.",
        re.compile(rf"(?P<name>{_NAME}) is a (?P<age>\d+) year old\."),
    ),
    "popularity": (
        "{subj} {be} {pop_phrase} {noun} among {poss_lc} friends{majority_clause}.",
        re.compile(
            r"(?:She|He|They) (?:is|are) "
            r"(?P<popularity_phrase>not a popular|a moderately popular|a popular) "
            r"(?:girl|boy|student) among (?:her|his|their) friends"
            r"(?: who are (?P<majority_gender>girls|boys) in their majority)?\."
        ),
    ),
    "naming": (
        "{name} declares to have {declared} {friend_word} and {subj_lc} {be} "
        "considered friend by {named} {person_word}.",
        re.compile(
            rf"(?P<name>{_NAME}) declares to have (?P<declared>\d+) friends? "
            r"and (?:she|he|they) (?:is|are) considered friend by "
            r"(?P<named>\d+) persons?\."
        ),
    ),
    "level": (
        "{name} has a {level} level of alcohol consumption.",
        re.compile(
            rf"(?P<name>{_NAME}) has a (?P<level>low|medium|high|very high) "
            r"level of alcohol consumption\."
        ),
    ),
    "friends_levels": (
        "{poss} closest friends have {relative} levels of alcohol consumption.",
        re.compile(
            r"(?:Her|His|Their) closest friends have "
            r"(?P<relative>similar|higher|lower) levels of alcohol consumption\."
        ),
    ),
    "influence_exposure": (
        "{subj} may be influenced by people with {exposure} levels of alcohol "
        "consumption.",
        re.compile(
            r"(?:She|He|They) may be influenced by people with "
            r"(?P<exposure>low|medium|high|very high) levels of alcohol consumption\."
        ),
    ),
    "first_drink": (
        "{subj} {be_past} {first_age} when {subj_lc} tried an alcoholic drink "
        "for the first time.",
        re.compile(
            r"(?:She|He|They) (?:was|were) (?P<first_age>\d+) when "
            r"(?:she|he|they) tried an alcoholic drink for the first time\."
        ),
    ),
    "abstains": (
        "{subj} {declares} not to drink alcohol.",
        re.compile(r"(?:She|He|They) declares? not to drink alcohol\."),
    ),
    "frequency": (
        "{subj} {declares} to have alcoholic drinks {frequency}{quantity_clause}.",
        re.compile(
            r"(?:She|He|They) declares? to have alcoholic drinks "
            r"(?P<frequency>[^,.]+?)"
            r"(?:, with (?P<quantity>[a-z, ]+) drinks per occasion)?\."
        ),
    ),
    "places": (
        "The places where {subj_lc} {goes} for a drink more frequently are {places}.",
        re.compile(
            r"The places where (?:she|he|they) goe?s? for a drink more "
            r"frequently are (?P<places>[^.]+)\."
        ),
    ),
    "audit": (
        "AUDIT Score: {score} (Zone {zone_number})",
        re.compile(r"AUDIT Score: (?P<score>\d+) \(Zone (?P<zone_number>[1-4])\)"),
    ),
    "band_popularity": (
        "Popularity: {band}",
        re.compile(r"Popularity: (?P<band>Low|Medium|High)"),
    ),
    "band_mediator": (
        "Role as mediator: {band}",
        re.compile(r"Role as mediator: (?P<band>Low|Medium|High)"),
    ),
    "band_influence": (
        "Level of influence: {band}",
        re.compile(r"Level of influence: (?P<band>Low|Medium|High)"),
    ),
}

PERSONAL_HEADER = "Personal and friendship highlights"
CONSUMPTION_HEADER = "Alcohol consumption highlights"
HABITS_PREFIX = "Alcohol consumption habits: "
SOCIAL_HEADER = "Social metrics:"


def _zone_level(zone: Optional[str]) -> Optional[int]:
    if zone is None:
        return None
    return ZONE_ORDER.index(zone)


def _majority_gender(genders: Sequence[str]) -> Optional[str]:
    girls = sum(1 for g in genders if g == "F")
    boys = sum(1 for g in genders if g == "M")
    if girls > boys:
        return "girls"
    if boys > girls:
        return "boys"
    return None


def _relative_level(ego_level: int, friend_zones: Sequence[str]) -> Optional[str]:
    levels = [_zone_level(z) for z in friend_zones if z in ZONE_ORDER]
    if not levels:
        return None
    mean = sum(levels) / len(levels)
    if mean > ego_level:
        return "higher"
    if mean < ego_level:
        return "lower"
    return "similar"


def _frequency_phrase(value: int) -> str:
    label = dict((v, k) for k, v in AUDIT_FREQUENCY_OPTIONS)[value]
    return label[0].lower() + label[1:] if label[0].isalpha() else label


def _quantity_words(value: int) -> str:
    label = dict((v, k) for k, v in AUDIT_QUANTITY_OPTIONS)[value]
    return QUANTITY_WORDS[label]


def render_report(
    person: PersonProfile,
    social: SocialProfile,
    *,
    friend_genders: Sequence[str] = (),
    friend_zones: Sequence[str] = (),
    influencer_zones: Sequence[str] = (),
) -> str:
    """Render the individual report for one student.

    ``friend_genders`` are the genders of the student's friendship alters,
    ``friend_zones`` the risk zones of their strong-tie friends, and
    ``influencer_zones`` the zones of the suggested influencers (empty when
    there are none).
    """

    words = PRONOUNS.get(person.gender, PRONOUNS[None])
    name = person.pseudonym
    zone = person.audit.zone if person.audit is not None else None
    ego_level = _zone_level(zone)

    personal = []
    if person.age is not None:
        personal.append(TEMPLATES["intro"][0].format(name=name, age=person.age))
    majority = _majority_gender(friend_genders)
    majority_clause = f" who are {majority} in their majority" if majority else ""
    personal.append(
        TEMPLATES["popularity"][0].format(
            pop_phrase=POPULARITY_PHRASES[social.popularity],
            majority_clause=majority_clause,
            **words,
        )
    )
    naming = TEMPLATES["naming"][0].format(
        name=name,
        declared=social.declared_friends,
        friend_word="friend" if social.declared_friends == 1 else "friends",
        named=social.named_by,
        person_word="person" if social.named_by == 1 else "persons",
        **words,
    )

    consumption = []
    if zone is not None:
        consumption.append(
            TEMPLATES["level"][0].format(name=name, level=ZONE_LEVELS[zone], **words)
        )
        relative = _relative_level(ego_level, friend_zones)
        if relative is not None:
            consumption.append(TEMPLATES["friends_levels"][0].format(relative=relative, **words))
        exposure_levels = [lvl for lvl in (_zone_level(z) for z in influencer_zones) if lvl is not None]
        if exposure_levels:
            exposure = ZONE_LEVELS[ZONE_ORDER[max(exposure_levels)]]
            consumption.append(
                TEMPLATES["influence_exposure"][0].format(exposure=exposure, **words)
            )

    habits = []
    if person.first_drink_age is not None:
        habits.append(
            TEMPLATES["first_drink"][0].format(first_age=person.first_drink_age, **words)
        )
    if person.audit_items is not None:
        freq = person.audit_items[0]
        if freq == 0:
            habits.append(TEMPLATES["abstains"][0].format(**words))
        else:
            quantity_clause = f", with {_quantity_words(person.audit_items[1])} drinks per occasion"
            habits.append(
                TEMPLATES["frequency"][0].format(
                    frequency=_frequency_phrase(freq),
                    quantity_clause=quantity_clause,
                    **words,
                )
            )
    if person.drink_places is not None:
        habits.append(TEMPLATES["places"][0].format(places=person.drink_places, **words))

    paragraphs = [PERSONAL_HEADER]
    if personal:
        paragraphs.append(" ".join(personal))
    paragraphs.append(naming)
    if consumption or habits or person.audit is not None:
        paragraphs.append(CONSUMPTION_HEADER)
        if consumption:
            paragraphs.append(" ".join(consumption))
        if habits:
            paragraphs.append(HABITS_PREFIX + " ".join(habits))
        if person.audit is not None:
            paragraphs.append(
                TEMPLATES["audit"][0].format(
                    score=person.audit.score,
                    zone_number=ZONE_ORDER.index(person.audit.zone) + 1,
                )
            )
    paragraphs.append(SOCIAL_HEADER)
    paragraphs.append(
        "\n".join(
            (
                TEMPLATES["band_popularity"][0].format(band=social.popularity),
                TEMPLATES["band_mediator"][0].format(band=social.mediator_role),
                TEMPLATES["band_influence"][0].format(band=social.influence),
            )
        )
    )
    return "\n\n".join(paragraphs) + "\n"


_INT_FIELDS = ("age", "declared", "named", "first_age", "score", "zone_number")


def parse_report(text: str) -> dict:
    """Recover every templated field from a rendered report.

    Fields whose sentences were omitted come back as ``None``; numeric
    fields are returned as ints.  The popularity/mediator/influence bands at
    the bottom are keyed ``band_popularity`` etc.
    """

    out: dict = {}
    for key, (_template, pattern) in TEMPLATES.items():
        match = pattern.search(text)
        if key.startswith("band_"):
            out[key] = match.group("band") if match else None
            continue
        if match is None:
            for group in pattern.groupindex:
                out.setdefault(group, None)
            continue
        for group, value in match.groupdict().items():
            if value is not None and group in _INT_FIELDS:
                out[group] = int(value)
            else:
                # a later template never overwrites an earlier parse with None
                if value is not None or group not in out:
                    out[group] = value
    return out
