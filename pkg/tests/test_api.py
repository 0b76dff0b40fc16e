import pytest

from hecke_series import config
from hecke_series.api.app_factory import create_app
from hecke_series.services import commands


@pytest.fixture
def client():
    app = create_app({"TESTING": True})
    with app.test_client() as client:
        yield client


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.get_json()["status"] == "ok"


def test_expand(client):
    response = client.post("/expand", json={"expr": "geom", "order": 3})
    assert response.status_code == 200
    assert response.get_json()["series"]["coeffs"] == [["1", "0"]] * 3


def test_parse_error(client):
    response = client.post("/expand", json={"expr": "U(2"})
    body = response.get_json()
    assert response.status_code == 400
    assert body["byte_offset"] == 3
    assert body["expected"] == "')'"


def test_missing_body(client):
    response = client.post("/expand", data="not json", content_type="text/plain")
    assert response.status_code == 400


@pytest.mark.parametrize(
    "body",
    [{"order": 3}, {"expr": 3}, {"expr": "geom", "order": "3"}, {"expr": "geom", "order": True}],
)
def test_invalid_fields(client, body):
    assert client.post("/expand", json=body).status_code == 400


def test_order_limit(client, monkeypatch):
    monkeypatch.setattr(config, "API_MAX_ORDER", 8)
    response = client.post("/expand", json={"expr": "geom", "order": 9})
    assert response.status_code == 400
    assert "8" in response.get_json()["error"]


def test_transform(client):
    response = client.post(
        "/transform", json={"expr": "x^1*pFq([1,1,1],[2,2])", "n": 2, "order": 20}
    )
    assert response.status_code == 200
    assert response.get_json()["agree"] is True


def test_transform_without_closed_form(client):
    response = client.post("/transform", json={"expr": "geom + geom", "n": 2, "mode": "closed"})
    assert response.status_code == 422


def test_eigen(client):
    response = client.post("/eigen", json={"expr": "polylog(-2)", "n": 2})
    assert response.status_code == 200
    assert response.get_json()["structural"]["eigenvalue"] == "1/4"


def test_classify_cm(client):
    response = client.post("/classify-cm", json={"a": [2, 2], "b": [1], "bound": 30})
    assert response.status_code == 200
    assert response.get_json()["exponent"] == 2


def test_classify_cm_strings(client):
    response = client.post("/classify-cm", json={"a": "1/2", "b": "", "bound": 8})
    assert response.get_json()["witness"] == [2, 2]


def test_inner(client):
    response = client.post("/inner", json={"f": "geom", "g": "geom", "order": 3, "radius": "1"})
    assert response.get_json()["value"] == "3"


def test_key_order_is_preserved(client):
    response = client.post("/expand", json={"expr": "geom", "order": 2})
    assert list(response.get_json(force=True).keys()) == ["expr", "ast", "series"]


def test_unexpected_error(client, monkeypatch):
    def broken(expr, order):
        raise RuntimeError("boom")

    monkeypatch.setattr(commands, "expand", broken)
    response = client.post("/expand", json={"expr": "geom"})
    assert response.status_code == 500
    assert response.get_json() == {"error": "Internal Server Error"}


def test_unknown_route_is_json(client):
    response = client.get("/nope")
    assert response.status_code == 404
    assert response.get_json() == {"error": "Not Found"}


def test_wrong_method_is_json(client):
    response = client.get("/expand")
    assert response.status_code == 405
    assert response.get_json() == {"error": "Method Not Allowed"}
