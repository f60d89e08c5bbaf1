from __future__ import annotations

import shutil
from pathlib import Path

import pytest

from safetrace.workspace import ProjectWorkspace

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "airspace"


@pytest.fixture(scope="session")
def fixture_dir() -> Path:
    return FIXTURE_DIR


@pytest.fixture()
def scratch_dir(tmp_path: Path) -> Path:
    """Writable copy of the scenario workspace; review logs land here, never
    in the repository fixture."""
    target = tmp_path / "airspace"
    shutil.copytree(FIXTURE_DIR, target)
    return target


@pytest.fixture()
def workspace(scratch_dir: Path) -> ProjectWorkspace:
    """Fresh scenario workspace backed by a throwaway copy."""
    return ProjectWorkspace.load(scratch_dir)


@pytest.fixture()
def scratch_workspace(scratch_dir: Path) -> ProjectWorkspace:
    return ProjectWorkspace.load(scratch_dir)
