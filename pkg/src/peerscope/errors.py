"""Exception hierarchy shared across the package."""


class PeerscopeError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(PeerscopeError):
    """Invalid graph construction or graph-operation precondition."""


class MetricError(PeerscopeError):
    """A metric is undefined or was called outside its domain."""


class PajekParseError(PeerscopeError):
    """Malformed Pajek NET text."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SurveyError(PeerscopeError):
    """Invalid questionnaire definition, answer, or score input."""


class KnowledgeError(PeerscopeError):
    """Fact-store vocabulary, referential, or rule violation."""


class StudyError(PeerscopeError):
    """Study lifecycle or persistence failure."""


class UnknownIdError(StudyError):
    """A study, graph, or person id does not exist."""


class StudyStateError(StudyError):
    """Operation not allowed in the study's current status."""


class ValidationFailed(StudyError):
    """An answer set has blocking validation problems.

    Carries the :class:`~peerscope.survey.ValidationReport` so callers can
    surface the individual problems instead of just this message.
    """

    def __init__(self, report):
        super().__init__("response validation failed")
        self.report = report
