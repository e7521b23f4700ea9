import pytest

from wittcalc.services import replay_service
from wittcalc.services.replay_service import replay
from wittcalc.utils.errors import UnknownScenario

from conftest import SEED

EXPECTED = {
    "cex": "obstruction",
    "a4": "obstruction",
    "units": "ok",
    "formula": "ok",
    "psi": "ok",
    "dwork": "ok",
}


def test_every_scenario_is_registered():
    assert set(replay_service.SCENARIOS) == set(EXPECTED)


@pytest.mark.parametrize("name,status", EXPECTED.items())
def test_scenario_status(name, status):
    report = replay(name, samples=3, seed=SEED)
    assert report.status == status
    if status == "obstruction":
        assert report.witnesses


def test_a4_payload():
    report = replay("a4", samples=3, seed=SEED)
    assert report.payload["formula_matches"]
    assert report.payload["N(4)"] == {"1": "4", "[A4/C3]": "12", "[A4/Z/2]": "6", "[A4/e]": "14"}


def test_units_counts():
    report = replay("units", samples=3, seed=SEED)
    assert report.payload["result"]["unit_counts"] == {"Z2": 4, "D3": 8, "D9": 16}


def test_unknown_scenario():
    with pytest.raises(UnknownScenario):
        replay("nothing")


def test_replays_are_reproducible():
    first = replay("units", samples=3, seed=SEED).model_dump_json()
    assert replay("units", samples=3, seed=SEED).model_dump_json() == first
