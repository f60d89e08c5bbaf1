"""Guard against drift between the live API and the recorded UI payloads.

The frontend contract suite replays frozen JSON recorded from this service
(frontend/test/fixtures). The deterministic read payloads must stay
byte-identical to what the API serves today; regenerate with
``python3 frontend/scripts/record_fixtures.py`` after an API change.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from safetrace.api import create_app
from safetrace.workspace import ProjectWorkspace

FIXTURES = Path(__file__).resolve().parent.parent / "frontend" / "test" / "fixtures"
DELTA_PARAMS = {"baseline": "v1", "current": "v2", "root": "UAV-1387"}


@pytest.fixture()
def client(scratch_dir):
    return TestClient(create_app(ProjectWorkspace.load(scratch_dir)))


@pytest.mark.parametrize(
    "name,path,params",
    [
        ("delta", "/api/v1/delta", DELTA_PARAMS),
        ("warnings", "/api/v1/warnings", DELTA_PARAMS),
        ("assets", "/api/v1/assets", {}),
        ("pending", "/api/v1/review/pending", DELTA_PARAMS),
        ("artifact-uav1413", "/api/v1/artifact", {"version": "v2", "id": "UAV-1413"}),
    ],
)
def test_recorded_payload_matches_live_api(client, name, path, params):
    recorded = json.loads((FIXTURES / f"{name}.json").read_text())
    live = client.get(path, params=params).json()
    assert live == recorded, f"{name}.json is stale; re-run frontend/scripts/record_fixtures.py"
