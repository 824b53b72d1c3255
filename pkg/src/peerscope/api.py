"""HTTP access to studies: roster to reports over JSON.

Thin layer over :class:`~peerscope.study.StudyStore` -- every analytical
decision lives below it, so anything the endpoints return can be reproduced
from the library alone.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import __version__
from .errors import (
    StudyError,
    StudyStateError,
    SurveyError,
    UnknownIdError,
    ValidationFailed,
)
from .study import StudyStore


class StudyCreate(BaseModel):
    title: str


class AnswerIn(BaseModel):
    person: str
    question: str
    value: Union[int, str]
    target: Optional[str] = None


class ResponseBatch(BaseModel):
    date: str
    answers: list[AnswerIn]


def _study_info(study) -> dict:
    return {
        "id": study.id,
        "title": study.title,
        "created": study.created,
        "status": study.status,
        "people": len(study.roster),
        "events": list(study.events),
        "versions": len(study.results),
    }


def create_app(store: Optional[StudyStore] = None, ui_dir=None) -> FastAPI:
    """Application serving ``store`` (a fresh default store when omitted).

    When ``ui_dir`` points at a directory of built front-end assets it is
    mounted at the web root, after every API route so the API always wins.
    """
    app = FastAPI(title="peerscope", version=__version__)
    if store is None:
        store = StudyStore()

    @app.exception_handler(UnknownIdError)
    async def _unknown(request: Request, exc: UnknownIdError):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.exception_handler(StudyStateError)
    async def _conflict(request: Request, exc: StudyStateError):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    @app.exception_handler(ValidationFailed)
    async def _invalid(request: Request, exc: ValidationFailed):
        return JSONResponse(
            status_code=422,
            content={"detail": str(exc), "report": exc.report.as_dict()},
        )

    @app.exception_handler(StudyError)
    async def _bad_study_input(request: Request, exc: StudyError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(SurveyError)
    async def _bad_survey_input(request: Request, exc: SurveyError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    # -- studies ---------------------------------------------------------

    @app.get("/studies")
    def list_studies():
        return {"studies": [_study_info(store.get(sid)) for sid in store.list_ids()]}

    @app.post("/studies", status_code=201)
    def create_study(body: StudyCreate):
        return _study_info(store.create(body.title))

    @app.get("/studies/{study_id}")
    def get_study(study_id: str):
        return _study_info(store.get(study_id))

    # -- collection --------------------------------------------------------

    @app.post("/studies/{study_id}/roster")
    async def import_roster(study_id: str, request: Request):
        text = (await request.body()).decode("utf-8")
        study = store.import_roster(study_id, text)
        return {
            "status": study.status,
            "roster": [
                {
                    "pseudonym": m.pseudonym,
                    "age": m.age,
                    "gender": m.gender,
                    "class": m.class_ref,
                }
                for m in study.roster
            ],
        }

    @app.get("/studies/{study_id}/questionnaire")
    def questionnaire(study_id: str):
        study = store.get(study_id)
        roster = [m.pseudonym for m in study.roster]
        questions = []
        for q in study.questionnaire.questions:
            entry = {
                "id": q.id,
                "text": q.text,
                "kind": q.kind,
                "options": [list(o) for o in q.options],
            }
            if q.repeat_over_roster:
                entry["targets"] = roster
            questions.append(entry)
        return {
            "id": study.questionnaire.id,
            "title": study.questionnaire.title,
            "questions": questions,
        }

    @app.post("/studies/{study_id}/responses")
    def import_responses(study_id: str, body: ResponseBatch):
        study, report = store.import_responses(
            study_id, body.date, [a.model_dump() for a in body.answers]
        )
        return {
            "status": study.status,
            "answers": len(study.answers),
            "events": list(study.events),
            "report": report.as_dict(),
        }

    # -- analysis ----------------------------------------------------------

    @app.post("/studies/{study_id}/analyze")
    def analyze(study_id: str):
        snapshot = store.analyze(study_id)
        return {"version": snapshot["version"], "summary": snapshot["summary"]}

    @app.get("/studies/{study_id}/graphs")
    def graphs(study_id: str):
        return {"graphs": store.graph_names(study_id)}

    @app.get("/studies/{study_id}/graphs/{name}")
    def graph_detail(study_id: str, name: str):
        return store.graph(study_id, name)

    @app.get("/studies/{study_id}/individuals/{pseudonym}")
    def individual(study_id: str, pseudonym: str):
        results = store.get(study_id).latest_results()
        try:
            profile = results["profiles"][pseudonym]
        except KeyError:
            raise UnknownIdError(f"no person {pseudonym!r} in study {study_id!r}") from None
        return {
            "person": profile,
            "social": results["social"][pseudonym],
            "report": results["reports"][pseudonym],
        }

    @app.get("/studies/{study_id}/individuals/{pseudonym}/mediators")
    def mediators(study_id: str, pseudonym: str):
        return {"mediators": _suggestions(store, study_id, pseudonym)["mediators"]}

    @app.get("/studies/{study_id}/individuals/{pseudonym}/influencers")
    def influencers(study_id: str, pseudonym: str):
        return {"influencers": _suggestions(store, study_id, pseudonym)["influencers"]}

    @app.get("/studies/{study_id}/export/{filename}")
    def export(study_id: str, filename: str):
        for suffix, fmt in ((".net", "pajek"), (".csv", "csv")):
            if filename.endswith(suffix):
                text = store.export_graph(study_id, filename[: -len(suffix)], fmt)
                return PlainTextResponse(text)
        raise UnknownIdError(f"no export {filename!r}: use <graph>.net or <graph>.csv")

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def _suggestions(store: StudyStore, study_id: str, pseudonym: str) -> dict:
    results = store.get(study_id).latest_results()
    try:
        return results["suggestions"][pseudonym]
    except KeyError:
        raise UnknownIdError(f"no person {pseudonym!r} in study {study_id!r}") from None
