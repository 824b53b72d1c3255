"""Fixed annotation vocabulary for computed network measures.

Graphs and nodes may only be annotated with these names; the knowledge
store's metric write-back uses the same vocabulary.
"""

NODE_METRICS = (
    "in_degree",
    "out_degree",
    "total_degree",
    "reach",
    "closeness_out",
    "closeness_in",
    "betweenness",
)

GRAPH_METRICS = (
    "density",
    "diameter",
    "unreachable_pairs",
    "component_count",
    "community_count",
    "modularity",
)

# ---------------------------------------------------------------------------
# Knowledge-store vocabulary
# ---------------------------------------------------------------------------

#: Every entity stored in a :class:`peerscope.kb.FactStore` carries exactly
#: one of these kinds.
ENTITY_KINDS = (
    "Person",
    "ClassOnSchool",
    "School",
    "Course",
    "CourseLevel",
    "GroupOfClass",
    "AcademicCategory",
    "Questionnaire",
    "Question",
    "QuestionSNA",
    "QuestionnairePastEvent",
    "Answer",
    "AnswerOfPersonToQuestion",
    "Network",
    "SNAConcept",
    "SNACharacteristic",
)

#: Closed predicate vocabulary.  Maps each predicate name to the expected
#: object type: ``"entity"`` (object must be an existing entity id) or
#: ``"literal"`` (object is a plain string / number / bool).
#:
#: ``hasKind`` is managed by the store itself -- it is written automatically
#: when an entity is created and cannot be asserted by callers.
PREDICATES = {
    # identity
    "hasKind": "literal",
    # people and school structure
    "hasPseudonym": "literal",
    "hasAge": "literal",
    "hasGender": "literal",
    "hasPlaceOfBirth": "literal",
    "memberOf": "entity",            # Person -> ClassOnSchool
    "partOfSchool": "entity",        # ClassOnSchool -> School
    "attendsCourse": "entity",       # ClassOnSchool -> Course
    "hasCourseLevel": "entity",      # Course -> CourseLevel
    "inGroup": "entity",             # Person -> GroupOfClass
    "hasAcademicCategory": "entity", # Person -> AcademicCategory
    # questionnaires, events, answers
    "questionOf": "entity",          # Question -> Questionnaire
    "hasText": "literal",
    "hasKindOfQuestion": "literal",
    "ofQuestionnaire": "entity",     # QuestionnairePastEvent -> Questionnaire
    "atDate": "literal",
    "answeredAt": "entity",          # Person -> QuestionnairePastEvent
    "answerBy": "entity",            # Answer -> Person
    "forQuestion": "entity",         # Answer -> Question
    "atEvent": "entity",             # Answer -> QuestionnairePastEvent
    "aboutPerson": "entity",         # AnswerOfPersonToQuestion -> Person
    "hasWeight": "literal",
    "hasValue": "literal",
    "generatesNetwork": "entity",    # QuestionSNA -> Network
    # derived social facts
    "memberOfNetwork": "entity",     # Person -> Network
    "relatedTo": "entity",           # Person -> Person
    "hasCharacteristic": "entity",   # Person -> SNACharacteristic
    "characterizesPerson": "entity", # SNACharacteristic -> Person
    "inNetwork": "entity",           # SNACharacteristic -> Network
    "relatedToCharacteristic": "entity",  # Answer -> SNACharacteristic
    # computed measures
    "conceptOfPerson": "entity",     # SNAConcept -> Person
    "conceptOfNetwork": "entity",    # SNAConcept -> Network
    "metricName": "literal",
    "metricValue": "literal",
    "networkName": "literal",
    # scored instruments
    "hasAuditScore": "literal",
    "hasAuditZone": "literal",
    "hasFasScore": "literal",
    "hasFasBand": "literal",
    "hasKidscreenTotal": "literal",
    "hasSelfEfficacy": "literal",
}
