import json

import pytest
from fastapi.testclient import TestClient

from admkit import bundled_model_path, conforms, parse_design, serialize_model
from admkit.service import create_app

from conftest import cycle_document, inconsistent_document

ROW_15 = {"AppType": "StandAlone", "Robot": "ANG", "Submission": "PureJavaScript"}


@pytest.fixture()
def client():
    return TestClient(create_app())


def start_session(client, model_id="rapp"):
    response = client.post("/sessions", content=json.dumps({"modelId": model_id}))
    assert response.status_code == 201
    return response.json()


def choose(client, sid, issue, alternative):
    return client.post(
        f"/sessions/{sid}/choices",
        content=json.dumps({"issue": issue, "alternative": alternative}),
    )


class TestModels:
    def test_default_app_serves_bundled_model(self, client):
        response = client.get("/models")
        assert response.status_code == 200
        assert response.json() == [
            {"id": "rapp", "name": "RAPP", "issueCount": 5, "alternativeCount": 12}
        ]

    def test_model_dir_listing(self, tmp_path):
        (tmp_path / "b.adm.json").write_text(
            bundled_model_path().read_text("utf-8"), encoding="utf-8"
        )
        (tmp_path / "a.adm.json").write_text(
            serialize_model(cycle_document()), encoding="utf-8"
        )
        client = TestClient(create_app(model_dir=tmp_path))
        assert [m["id"] for m in client.get("/models").json()] == ["a", "b"]

    def test_empty_model_dir(self, tmp_path):
        client = TestClient(create_app(model_dir=tmp_path))
        assert client.get("/models").json() == []

    def test_get_model_document(self, client):
        response = client.get("/models/rapp")
        assert response.status_code == 200
        assert response.text == bundled_model_path().read_text("utf-8")

    def test_get_unknown_model(self, client):
        response = client.get("/models/nope")
        assert response.status_code == 404
        assert response.json()["error"] == "not-found"

    def test_upload_then_listed(self, client):
        response = client.post(
            "/models", content=serialize_model(inconsistent_document())
        )
        assert response.status_code == 201
        assert response.json() == {"id": "doomed"}
        assert response.headers["location"] == "/models/doomed"
        assert [m["id"] for m in client.get("/models").json()] == ["rapp", "doomed"]

    def test_upload_id_collision_gets_suffix(self, client):
        body = bundled_model_path().read_text("utf-8")
        assert client.post("/models", content=body).json() == {"id": "rapp-2"}
        assert client.post("/models", content=body).json() == {"id": "rapp-3"}

    def test_upload_slug_from_name(self, client):
        doc = json.loads(bundled_model_path().read_text("utf-8"))
        doc["name"] = "My Fancy Model!"
        assert client.post("/models", content=json.dumps(doc)).json() == {
            "id": "my-fancy-model"
        }

    def test_upload_malformed_json(self, client):
        response = client.post("/models", content="{broken")
        assert response.status_code == 400
        assert response.json()["error"] == "bad-request"

    def test_upload_non_object(self, client):
        assert client.post("/models", content="[]").status_code == 400

    def test_upload_ill_formed_model(self, client):
        response = client.post(
            "/models",
            content='{"name": "b", "issues": [{"id": "I"}], "alternatives": '
            '[{"id": "A", "issue": "I", "triggers": ["I"]}], "incompatible": []}',
        )
        assert response.status_code == 422
        body = response.json()
        assert body["error"] == "invalid-model"
        assert [v["rule"] for v in body["violations"]] == ["self-trigger"]


class TestMeaning:
    def test_full_meaning(self, client):
        body = client.get("/models/rapp/meaning").json()
        assert len(body["designs"]) == 22
        assert body["truncated"] is False
        assert body["designs"][0] == {
            "AppType": "PlatformBased",
            "Platform": "Local",
            "Robot": "NAO",
            "Submission": "RosPackage",
            "RosLang": "Cpp",
        }

    def test_limit(self, client):
        body = client.get("/models/rapp/meaning?limit=3").json()
        assert len(body["designs"]) == 3
        assert body["truncated"] is True

    def test_well_founded_param(self, client, tmp_path):
        upload = client.post("/models", content=serialize_model(cycle_document()))
        model_id = upload.json()["id"]
        full = client.get(f"/models/{model_id}/meaning").json()
        assert len(full["designs"]) == 2
        founded = client.get(f"/models/{model_id}/meaning?wellFounded=true").json()
        assert founded["designs"] == [{}]

    def test_bad_params(self, client):
        assert client.get("/models/rapp/meaning?limit=x").status_code == 400
        assert client.get("/models/rapp/meaning?limit=-1").status_code == 400
        assert client.get("/models/rapp/meaning?wellFounded=maybe").status_code == 400

    def test_unknown_model(self, client):
        assert client.get("/models/nope/meaning").status_code == 404


class TestConformity:
    def test_conforming_design(self, client):
        response = client.post(
            "/models/rapp/conformity", content=json.dumps(ROW_15)
        )
        assert response.status_code == 200
        assert response.json() == {"conforms": True, "violations": []}

    def test_c3_witnesses(self, client):
        response = client.post(
            "/models/rapp/conformity",
            content=json.dumps({"AppType": "PlatformBased", "Robot": "ANG"}),
        )
        body = response.json()
        assert response.status_code == 200
        assert body["conforms"] is False
        c3 = [v for v in body["violations"] if v["condition"] == "C3"]
        assert c3[0]["witnesses"] == ["PlatformBased", "ANG"]

    def test_empty_design_reports_entry_points(self, client):
        body = client.post("/models/rapp/conformity", content="{}").json()
        assert [v["condition"] for v in body["violations"]] == ["C4-missing"] * 3

    def test_malformed_design(self, client):
        assert client.post("/models/rapp/conformity", content="[]").status_code == 400

    def test_unknown_model(self, client):
        assert client.post("/models/nope/conformity", content="{}").status_code == 404

    def test_verdict_matches_library(self, client, rapp):
        samples = [
            ROW_15,
            {},
            {"AppType": "PlatformBased", "Robot": "ANG"},
            {"Ghost": "ANG"},
            {"AppType": "Local"},
        ]
        for sample in samples:
            via_api = client.post(
                "/models/rapp/conformity", content=json.dumps(sample)
            ).json()
            direct = conforms(parse_design(json.dumps(sample)), rapp)
            assert via_api["conforms"] == direct.conforms
            assert [v["condition"] for v in via_api["violations"]] == [
                v.condition for v in direct.violations
            ]


class TestSessions:
    def test_create_session_resource(self, client):
        resource = start_session(client)
        assert resource["modelId"] == "rapp"
        assert resource["pending"] == ["AppType", "Robot", "Submission"]
        assert resource["choices"] == {}
        assert resource["status"] == {
            "complete": False,
            "viable": True,
            "pendingCount": 3,
        }
        assert set(resource["allowed"]) == {"AppType", "Robot", "Submission"}
        assert resource["allowed"]["AppType"] == [
            {"alternative": "PlatformBased", "viable": True},
            {"alternative": "StandAlone", "viable": True},
        ]
        assert resource["excluded"] == {
            "AppType": [],
            "Robot": [],
            "Submission": [],
        }

    def test_create_session_unknown_model(self, client):
        response = client.post("/sessions", content='{"modelId": "nope"}')
        assert response.status_code == 404

    def test_create_session_missing_field(self, client):
        assert client.post("/sessions", content="{}").status_code == 400
        assert client.post("/sessions", content="oops").status_code == 400

    def test_create_session_cyclic_model(self, client):
        model_id = client.post(
            "/models", content=serialize_model(cycle_document())
        ).json()["id"]
        response = client.post(
            "/sessions", content=json.dumps({"modelId": model_id})
        )
        assert response.status_code == 422
        assert response.json()["error"] == "cyclic-model"

    def test_get_session(self, client):
        sid = start_session(client)["id"]
        response = client.get(f"/sessions/{sid}")
        assert response.status_code == 200
        assert response.json()["id"] == sid

    def test_get_unknown_session(self, client):
        assert client.get("/sessions/nope").status_code == 404

    def test_choice_narrows_allowed(self, client):
        sid = start_session(client)["id"]
        resource = choose(client, sid, "Robot", "ANG").json()
        assert resource["choices"] == {"Robot": "ANG"}
        assert resource["allowed"]["Submission"] == [
            {"alternative": "PureJavaScript", "viable": True}
        ]

    def test_excluded_names_the_conflicting_choice(self, client):
        sid = start_session(client)["id"]
        resource = choose(client, sid, "Robot", "ANG").json()
        assert resource["excluded"] == {
            "AppType": [{"alternative": "PlatformBased", "conflictsWith": "ANG"}],
            "Submission": [
                {"alternative": "RosPackage", "conflictsWith": "ANG"},
                {"alternative": "PureCpp", "conflictsWith": "ANG"},
            ],
        }

    def test_incompatible_choice_conflict(self, client):
        sid = start_session(client)["id"]
        choose(client, sid, "Robot", "ANG")
        response = choose(client, sid, "Submission", "RosPackage")
        assert response.status_code == 409
        body = response.json()
        assert body["error"] == "incompatible-choice"
        assert body["witnesses"] == ["ANG", "RosPackage"]

    def test_not_pending_choice_conflict(self, client):
        sid = start_session(client)["id"]
        response = choose(client, sid, "Platform", "Local")
        assert response.status_code == 409
        assert response.json()["error"] == "not-pending"

    def test_wrong_issue_choice(self, client):
        sid = start_session(client)["id"]
        response = choose(client, sid, "AppType", "Local")
        assert response.status_code == 422
        assert response.json()["error"] == "wrong-issue"

    def test_malformed_choice_body(self, client):
        sid = start_session(client)["id"]
        assert (
            client.post(f"/sessions/{sid}/choices", content='{"issue": "A"}')
            .status_code
            == 400
        )

    def test_triggered_issue_appears(self, client):
        sid = start_session(client)["id"]
        resource = choose(client, sid, "AppType", "PlatformBased").json()
        assert resource["pending"] == ["Platform", "Robot", "Submission"]

    def test_retract_cascade_through_api(self, client):
        sid = start_session(client)["id"]
        choose(client, sid, "AppType", "PlatformBased")
        choose(client, sid, "Platform", "Local")
        response = client.delete(f"/sessions/{sid}/choices/AppType")
        assert response.status_code == 200
        resource = response.json()
        assert resource["choices"] == {}
        assert resource["pending"] == ["AppType", "Robot", "Submission"]

    def test_retract_unresolved_conflict(self, client):
        sid = start_session(client)["id"]
        response = client.delete(f"/sessions/{sid}/choices/AppType")
        assert response.status_code == 409
        assert response.json()["error"] == "not-resolved"

    def test_complete_session_status(self, client):
        sid = start_session(client)["id"]
        for issue, alternative in ROW_15.items():
            assert choose(client, sid, issue, alternative).status_code == 200
        status = client.get(f"/sessions/{sid}").json()["status"]
        assert status == {"complete": True, "viable": True, "pendingCount": 0}

    def test_invariants_via_api(self, client, rapp):
        sid = start_session(client)["id"]
        script = [
            ("choose", "AppType", "PlatformBased"),
            ("choose", "Robot", "NAO"),
            ("retract", "AppType", None),
            ("choose", "AppType", "StandAlone"),
            ("choose", "Submission", "RosPackage"),
        ]
        for action, issue, alternative in script:
            if action == "choose":
                response = choose(client, sid, issue, alternative)
            else:
                response = client.delete(f"/sessions/{sid}/choices/{issue}")
            resource = response.json()
            chosen = set(resource["choices"])
            pending = set(resource["pending"])
            assert not (chosen & pending)
            required = set(rapp.entry_points())
            for a in resource["choices"].values():
                required |= rapp.triggered_by[a]
            assert chosen | pending == required


class TestSessionExpiry:
    def test_idle_sessions_expire(self):
        now = [1000.0]
        app = create_app(session_ttl=60.0, clock=lambda: now[0])
        client = TestClient(app)
        sid = start_session(client)["id"]
        now[0] += 30.0
        assert client.get(f"/sessions/{sid}").status_code == 200
        now[0] += 59.0
        assert client.get(f"/sessions/{sid}").status_code == 200
        now[0] += 61.0
        assert client.get(f"/sessions/{sid}").status_code == 404

    def test_touch_resets_idle_clock(self):
        now = [0.0]
        app = create_app(session_ttl=60.0, clock=lambda: now[0])
        client = TestClient(app)
        sid = start_session(client)["id"]
        for _ in range(5):
            now[0] += 50.0
            assert client.get(f"/sessions/{sid}").status_code == 200
