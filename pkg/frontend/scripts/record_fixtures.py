#!/usr/bin/env python3
"""Record golden-scenario API payloads for the UI contract tests.

Drives the real service (in process) over a scratch copy of the bundled
workspace and freezes every payload the UI tests replay. Re-run after any
API change:  python3 scripts/record_fixtures.py
"""

from __future__ import annotations

import json
import shutil
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from safetrace.api import create_app
from safetrace.workspace import ProjectWorkspace

HERE = Path(__file__).resolve().parent
FIXTURES = HERE.parent / "test" / "fixtures"
WORKSPACE_SRC = HERE.parent.parent / "fixtures" / "airspace"

REF = {"baseline": "v1", "current": "v2", "root": "UAV-1387"}


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        workspace_dir = Path(tmp) / "airspace"
        shutil.copytree(WORKSPACE_SRC, workspace_dir)
        client = TestClient(create_app(ProjectWorkspace.load(workspace_dir)))

        def save(name: str, payload) -> None:
            path = FIXTURES / f"{name}.json"
            path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
            print(f"wrote {path.relative_to(HERE.parent)}")

        save("delta", client.get("/api/v1/delta", params=REF).json())
        save("warnings", client.get("/api/v1/warnings", params=REF).json())
        save("assets", client.get("/api/v1/assets").json())
        save("pending", client.get("/api/v1/review/pending", params=REF).json())
        save(
            "artifact-uav1413",
            client.get("/api/v1/artifact", params={"version": "v2", "id": "UAV-1413"}).json(),
        )
        save(
            "rationales-empty",
            client.get("/api/v1/rationales", params={"subject": "UAV-1413"}).json(),
        )

        decision = client.post(
            "/api/v1/decisions",
            json={
                "analyst": "analyst1",
                **REF,
                "impacts_safety": False,
                "additional_mitigations_needed": False,
                "notes": "",
            },
        ).json()
        save("decision-created", decision)
        save(
            "close-pending-409",
            client.post(f"/api/v1/decisions/{decision['id']}/close").json(),
        )

        created = client.post(
            "/api/v1/rationales",
            json={
                "kind": "DesignDecision",
                "subject": "UAV-1413",
                **REF,
                "reason": "more economical check when new flight paths are planned",
                "alternatives": ["keep continuous polling"],
                "arguments": ["reduces LAANC load between missions"],
                "author": "dev1",
            },
        ).json()
        save("rationale-created", created)
        save(
            "rationales-after",
            client.get("/api/v1/rationales", params={"subject": "UAV-1413"}).json(),
        )

        for subject, kind in (
            ("UAV-1388", "DesignDecision"),
            ("MonitorAirspace.java", "CodeChange"),
            ("OnDemandAirspace.java", "CodeChange"),
        ):
            body = {"kind": kind, "subject": subject, **REF, "author": "dev1"}
            if kind == "DesignDecision":
                body["reason"] = "superseded by the on-demand design"
            else:
                body["justification"] = "polling service replaced"
                body["explanation"] = "fetch happens when a flight path is planned"
            assert client.post("/api/v1/rationales", json=body).status_code == 201

        save("pending-empty", client.get("/api/v1/review/pending", params=REF).json())
        save("close-ok", client.post(f"/api/v1/decisions/{decision['id']}/close").json())
        save("decisions-closed", client.get("/api/v1/decisions").json())


if __name__ == "__main__":
    main()
