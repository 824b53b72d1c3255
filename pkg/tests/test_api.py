"""Drives the HTTP service end to end against a temporary store.

The flow mirrors how a fieldworker would use the service: create a study,
import a roster, submit one battery of responses, analyze, then read graphs
and individual reports back out.
"""

import csv
import io
from types import SimpleNamespace

import pytest
from fastapi.testclient import TestClient

from peerscope.api import create_app
from peerscope.study import StudyStore

from . import synthetic

DATE = synthetic.EVENT_DATE
GRAPH_NAMES = {"friendship", "acquaintances", "partners", "friends", "consumption"}


@pytest.fixture()
def store(tmp_path):
    return StudyStore(tmp_path)


@pytest.fixture()
def client(store):
    return TestClient(create_app(store))


def make_study(client, n=3):
    created = client.post("/studies", json={"title": "Class 4A"}).json()
    sid = created["id"]
    imported = client.post(f"/studies/{sid}/roster", content=synthetic.roster_csv(n))
    return sid, [row["pseudonym"] for row in imported.json()["roster"]]


def submit_responses(client, sid, pseudonyms):
    members = [SimpleNamespace(pseudonym=p) for p in pseudonyms]
    return client.post(
        f"/studies/{sid}/responses",
        json={"date": DATE, "answers": synthetic.response_records(members)},
    )


@pytest.fixture()
def analyzed(client):
    """A three-person study taken through the whole flow once."""
    sid, people = make_study(client)
    submit_responses(client, sid, people)
    first = client.post(f"/studies/{sid}/analyze")
    assert first.status_code == 200
    return sid, people, first


class TestStudyLifecycle:
    def test_create_study(self, client):
        r = client.post("/studies", json={"title": "Class 4A"})
        assert r.status_code == 201
        body = r.json()
        assert body["status"] == "draft"
        assert body["title"] == "Class 4A"
        assert len(body["id"]) == 12

    def test_blank_title_rejected(self, client):
        assert client.post("/studies", json={"title": "   "}).status_code == 400

    def test_listing_includes_created_studies(self, client):
        sid = client.post("/studies", json={"title": "One"}).json()["id"]
        listed = client.get("/studies").json()["studies"]
        assert [s["id"] for s in listed] == [sid]

    def test_unknown_study_is_404(self, client):
        assert client.get("/studies/feedfacecafe").status_code == 404

    def test_roster_import_pseudonymizes(self, client):
        sid = client.post("/studies", json={"title": "One"}).json()["id"]
        r = client.post(f"/studies/{sid}/roster", content=synthetic.roster_csv(3))
        assert r.status_code == 200
        body = r.json()
        assert body["status"] == "collecting"
        assert len(body["roster"]) == 3
        assert len({row["pseudonym"] for row in body["roster"]}) == 3

    def test_bad_roster_is_400(self, client):
        sid = client.post("/studies", json={"title": "One"}).json()["id"]
        r = client.post(f"/studies/{sid}/roster", content="who,what\n")
        assert r.status_code == 400

    def test_questionnaire_expands_network_questions_over_roster(self, client):
        sid, people = make_study(client)
        q = client.get(f"/studies/{sid}/questionnaire").json()
        by_id = {item["id"]: item for item in q["questions"]}
        assert by_id["time_spent"]["targets"] == people
        assert by_id["drink_with"]["targets"] == people
        assert "targets" not in by_id["audit_q1"]
        assert by_id["audit_q1"]["options"]

    def test_responses_before_roster_conflict(self, client):
        sid = client.post("/studies", json={"title": "One"}).json()["id"]
        r = client.post(f"/studies/{sid}/responses", json={"date": DATE, "answers": []})
        assert r.status_code == 409

    def test_bad_event_date_is_400(self, client):
        sid, _ = make_study(client)
        r = client.post(
            f"/studies/{sid}/responses", json={"date": "03/02/2026", "answers": []}
        )
        assert r.status_code == 400

    def test_unknown_respondent_is_422_with_report(self, client):
        sid, _ = make_study(client)
        answers = [{"person": "nobody", "question": "audit_q1", "value": 0}]
        r = client.post(f"/studies/{sid}/responses", json={"date": DATE, "answers": answers})
        assert r.status_code == 422
        assert r.json()["report"]["unknown_respondents"] == ["nobody"]

    def test_partial_batch_is_stored_with_advisory_report(self, client):
        sid, people = make_study(client)
        answers = [{"person": people[0], "question": "audit_q1", "value": 0}]
        r = client.post(f"/studies/{sid}/responses", json={"date": DATE, "answers": answers})
        assert r.status_code == 200
        body = r.json()
        assert body["answers"] == 1
        assert body["events"] == [DATE]
        assert set(body["report"]["missing_respondents"]) == set(people[1:])


class TestAnalysisFlow:
    def test_analyze_returns_summary(self, analyzed):
        _, _, first = analyzed
        body = first.json()
        assert body["version"] == 1
        assert body["summary"]["people"] == 3
        assert set(body["summary"]["graphs"]) == GRAPH_NAMES

    def test_analyze_on_draft_conflicts(self, client):
        sid = client.post("/studies", json={"title": "One"}).json()["id"]
        assert client.post(f"/studies/{sid}/analyze").status_code == 409

    def test_reanalysis_is_byte_identical(self, client, analyzed):
        sid, _, first = analyzed
        again = client.post(f"/studies/{sid}/analyze")
        assert again.content == first.content

    def test_graph_catalogue(self, client, analyzed):
        sid, _, _ = analyzed
        assert set(client.get(f"/studies/{sid}/graphs").json()["graphs"]) == GRAPH_NAMES

    def test_graph_detail_carries_annotations(self, client, analyzed):
        sid, people, _ = analyzed
        g = client.get(f"/studies/{sid}/graphs/friendship").json()
        assert g["weighted"] is True
        assert {n["label"] for n in g["nodes"]} == set(people)
        assert "modularity" in g["annotations"]

    def test_unknown_graph_is_404(self, client, analyzed):
        sid, _, _ = analyzed
        assert client.get(f"/studies/{sid}/graphs/karate").status_code == 404

    def test_graphs_before_analysis_conflict(self, client):
        sid, _ = make_study(client)
        assert client.get(f"/studies/{sid}/graphs").status_code == 409

    def test_individual_detail(self, client, analyzed):
        sid, people, _ = analyzed
        body = client.get(f"/studies/{sid}/individuals/{people[0]}").json()
        assert body["person"]["pseudonym"] == people[0]
        assert "declared_friends" in body["social"]
        assert people[0] in body["report"]

    def test_unknown_individual_is_404(self, client, analyzed):
        sid, _, _ = analyzed
        assert client.get(f"/studies/{sid}/individuals/Nobody").status_code == 404

    def test_mediators_and_influencers(self, client, analyzed):
        sid, people, _ = analyzed
        m = client.get(f"/studies/{sid}/individuals/{people[0]}/mediators").json()
        i = client.get(f"/studies/{sid}/individuals/{people[0]}/influencers").json()
        assert isinstance(m["mediators"], list)
        assert isinstance(i["influencers"], list)
        assert people[0] not in m["mediators"]
        assert people[0] not in i["influencers"]

    def test_suggestions_for_unknown_person_are_404(self, client, analyzed):
        sid, _, _ = analyzed
        assert client.get(f"/studies/{sid}/individuals/Nobody/mediators").status_code == 404

    def test_export_matches_store(self, client, store, analyzed):
        sid, _, _ = analyzed
        net = client.get(f"/studies/{sid}/export/friendship.net")
        assert net.status_code == 200
        assert net.text == store.export_graph(sid, "friendship", "pajek")
        cs = client.get(f"/studies/{sid}/export/friendship.csv")
        assert cs.text == store.export_graph(sid, "friendship", "csv")

    def test_export_needs_known_extension(self, client, analyzed):
        sid, _, _ = analyzed
        assert client.get(f"/studies/{sid}/export/friendship.xml").status_code == 404

    def test_roster_frozen_after_analysis(self, client, analyzed):
        sid, _, _ = analyzed
        r = client.post(f"/studies/{sid}/roster", content=synthetic.roster_csv(3))
        assert r.status_code == 409


class TestPrivacy:
    def test_real_names_never_served(self, client, analyzed):
        sid, people, first = analyzed
        rows = csv.DictReader(io.StringIO(synthetic.roster_csv(3)))
        names = [row["full_name"] for row in rows]
        assert names
        payloads = [
            first.text,
            client.get(f"/studies/{sid}").text,
            client.get(f"/studies/{sid}/graphs/friendship").text,
            client.get(f"/studies/{sid}/individuals/{people[0]}").text,
            client.get(f"/studies/{sid}/export/friendship.net").text,
        ]
        for name in names:
            for payload in payloads:
                assert name not in payload


class TestStaticUi:
    def test_ui_mounted_behind_api_routes(self, store, tmp_path):
        ui = tmp_path / "dist"
        ui.mkdir()
        (ui / "index.html").write_text("<!doctype html><h1>viewer</h1>")
        client = TestClient(create_app(store, ui_dir=ui))
        assert "viewer" in client.get("/").text
        assert client.get("/studies").status_code == 200

    def test_missing_ui_dir_is_ignored(self, store, tmp_path):
        client = TestClient(create_app(store, ui_dir=tmp_path / "absent"))
        assert client.get("/studies").status_code == 200
