"""Classroom social network analysis and alcohol-use risk profiling."""

from .errors import (
    GraphError,
    KnowledgeError,
    MetricError,
    PajekParseError,
    PeerscopeError,
    StudyError,
    StudyStateError,
    SurveyError,
    UnknownIdError,
    ValidationFailed,
)
from .graph import NodeRef, SocialGraph, Tie
from .study import Study, StudyStore

__version__ = "0.1.0"

__all__ = [
    "GraphError",
    "KnowledgeError",
    "MetricError",
    "NodeRef",
    "PajekParseError",
    "PeerscopeError",
    "SocialGraph",
    "Study",
    "StudyError",
    "StudyStateError",
    "StudyStore",
    "SurveyError",
    "Tie",
    "UnknownIdError",
    "ValidationFailed",
    "__version__",
]
