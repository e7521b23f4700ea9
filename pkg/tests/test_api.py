from fastapi.testclient import TestClient

from wittcalc import __version__
from wittcalc.api.main import app

client = TestClient(app)


def test_health():
    response = client.get("/api/health")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert body["version"] == __version__


def test_ghost_components():
    response = client.post("/api/witt/ghost", json={"p": 3, "m": 2, "ring": {"type": "integers"}, "vector": [0, 1]})
    assert response.status_code == 200
    assert response.json() == {"status": "ok", "payload": ["0", "3"], "witnesses": []}


def test_ghost_rejects_a_bad_descriptor():
    response = client.post("/api/witt/ghost", json={"p": 3, "m": 2, "ring": {"type": "mod"}, "vector": [0, 1]})
    assert response.status_code == 422


def test_ghost_rejects_a_wrong_length():
    response = client.post("/api/witt/ghost", json={"p": 3, "m": 2, "ring": {"type": "integers"}, "vector": [0]})
    assert response.status_code == 400


def test_lift_of_squaring():
    response = client.post("/api/witt/lift", json={"p": 3, "m": 2, "map": {"kind": "power", "exponent": 2},
                                                   "vector": [1, 1]})
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_lift_obstruction():
    response = client.post("/api/witt/lift", json={"p": 3, "m": 2, "map": {"kind": "burnside-norm", "group": "C3"},
                                                   "vector": [0, 1]})
    assert response.status_code == 422
    detail = response.json()["detail"]
    assert detail["status"] == "obstruction"
    assert detail["payload"] == {"index": 1, "residue": {"x": "8"}}


def test_marks():
    response = client.get("/api/burnside/Z2/marks")
    assert response.status_code == 200
    assert response.json() == {"columns": ["e", "Z/2"], "index": ["Z/2/e", "Z/2/Z/2"], "marks": [[2, 0], [1, 1]]}


def test_units():
    response = client.get("/api/burnside/D3/units")
    assert response.status_code == 200
    assert response.json()["payload"]["count"] == 8


def test_unknown_group():
    assert client.get("/api/burnside/Q8/units").status_code == 404


def test_unknown_replay():
    assert client.get("/api/replay/nothing").status_code == 404


def test_replay_cex():
    response = client.get("/api/replay/cex")
    assert response.status_code == 200
    assert response.json()["status"] == "obstruction"
