"""Versioned artifact corpora, trace links, and the traceability model.

A workspace's traceability model declares which artifact types exist and
which directed link types may join them; snapshots hold one version of the
artifact corpus and are validated against that model on ingestion.  Two
reserved node types, ``FaultNode`` and ``SacNode``, let link types reference
safety-asset nodes that live outside any snapshot.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import IO, Any

import yaml

from .errors import ParseError, SchemaError, ValidationError

# Node types that resolve against the safety-asset store, never a snapshot.
RESERVED_SAFETY_TYPES = frozenset({"FaultNode", "SacNode"})

DOWNSTREAM = "downstream"
HORIZONTAL = "horizontal"


def content_hash(artifact: "Artifact") -> str:
    """Digest over an artifact's normalized content, excluding its id.

    Normalization: surrounding whitespace of summary and body is trimmed and
    attributes are ordered by key.  Excluding the id lets replacement
    detection compare content across differently-named artifacts.
    """
    canonical = json.dumps(
        {
            "type": artifact.artifact_type,
            "summary": artifact.summary.strip(),
            "body": artifact.body.strip(),
            "attributes": sorted(artifact.attributes.items()),
        },
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class Artifact:
    """One versioned development item (requirement, design, code, test...).

    Attributes:
        id: stable opaque identifier, e.g. "UAV-1387".
        artifact_type: type name drawn from the traceability model.
        summary: short text.
        body: long text, may be empty.
        attributes: ordered string key/value pairs.
        content_hash: digest over normalized content; derived, never set.
    """

    id: str
    artifact_type: str
    summary: str = ""
    body: str = ""
    attributes: dict[str, str] = field(default_factory=dict)
    content_hash: str = field(init=False, default="")

    def __post_init__(self) -> None:
        self.content_hash = content_hash(self)


@dataclass(frozen=True)
class TraceLink:
    """A directed, typed link between two identifiers."""

    source_id: str
    target_id: str
    link_type: str


@dataclass(frozen=True)
class LinkType:
    """A declared link type: name plus permitted endpoint types."""

    name: str
    source_type: str
    target_type: str
    direction: str  # DOWNSTREAM or HORIZONTAL


@dataclass
class TraceabilityInformationModel:
    """The typed schema governing artifacts and trace links.

    Attributes:
        artifact_types: declared artifact type names.
        link_types: declared link types, document order.
    """

    artifact_types: list[str]
    link_types: list[LinkType]

    def link_type(self, name: str) -> LinkType | None:
        for lt in self.link_types:
            if lt.name == name:
                return lt
        return None

    def downstream_link_names(self) -> set[str]:
        return {lt.name for lt in self.link_types if lt.direction == DOWNSTREAM}


@dataclass
class Snapshot:
    """One version of the artifact corpus.

    Attributes:
        version_label: e.g. "v1", "baseline".
        artifacts: artifacts keyed by id.
        links: trace links, document order.
        captured_at: ingestion timestamp (the only non-content field).
    """

    version_label: str
    artifacts: dict[str, Artifact]
    links: list[TraceLink]
    captured_at: datetime

    def artifact_ids(self) -> set[str]:
        return set(self.artifacts)


def _read(source: str | IO[str]) -> str:
    if hasattr(source, "read"):
        return source.read()  # type: ignore[union-attr]
    return source


def _load_yaml(source: str | IO[str], what: str) -> Any:
    try:
        doc = yaml.safe_load(_read(source))
    except yaml.YAMLError as exc:
        raise ParseError(f"{what}: not valid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{what}: top level must be a mapping")
    return doc


def _require_str(doc: dict, key: str, what: str) -> str:
    value = doc.get(key)
    if not isinstance(value, str) or not value:
        raise ParseError(f"{what}: missing or non-string field '{key}'")
    return value


def load_tim(source: str | IO[str]) -> TraceabilityInformationModel:
    """Parse and validate a traceability model document.

    Raises:
        ParseError: the document is malformed.
        SchemaError: a type reference is unknown or reserved, a name is
            duplicated, or the downstream type graph contains a cycle; the
            message names the offending element.
    """
    doc = _load_yaml(source, "traceability model")

    raw_types = doc.get("artifact_types")
    if not isinstance(raw_types, list) or not all(isinstance(t, str) for t in raw_types):
        raise ParseError("traceability model: 'artifact_types' must be a list of names")
    raw_links = doc.get("link_types", [])
    if not isinstance(raw_links, list):
        raise ParseError("traceability model: 'link_types' must be a list")

    seen: set[str] = set()
    for name in raw_types:
        if name in RESERVED_SAFETY_TYPES:
            raise SchemaError(f"artifact type '{name}' is reserved for safety nodes")
        if name in seen:
            raise SchemaError(f"duplicate artifact type '{name}'")
        seen.add(name)

    link_types: list[LinkType] = []
    link_names: set[str] = set()
    known = seen | RESERVED_SAFETY_TYPES
    for entry in raw_links:
        if not isinstance(entry, dict):
            raise ParseError("traceability model: each link type must be a mapping")
        name = _require_str(entry, "name", "link type")
        src = _require_str(entry, "source", f"link type '{name}'")
        tgt = _require_str(entry, "target", f"link type '{name}'")
        direction = _require_str(entry, "direction", f"link type '{name}'")
        if direction not in (DOWNSTREAM, HORIZONTAL):
            raise ParseError(
                f"link type '{name}': direction must be '{DOWNSTREAM}' or '{HORIZONTAL}'"
            )
        if name in link_names:
            raise SchemaError(f"duplicate link type '{name}'")
        link_names.add(name)
        for endpoint in (src, tgt):
            if endpoint not in known:
                raise SchemaError(f"link type '{name}' references unknown type '{endpoint}'")
        if direction == DOWNSTREAM and (
            src in RESERVED_SAFETY_TYPES or tgt in RESERVED_SAFETY_TYPES
        ):
            # Downstream links drive slice construction over artifacts only;
            # safety nodes join through horizontal links.
            raise SchemaError(f"downstream link type '{name}' may not reference safety node types")
        link_types.append(LinkType(name, src, tgt, direction))

    cycle = _find_type_cycle(raw_types, link_types)
    if cycle is not None:
        raise SchemaError("cyclic downstream type graph: " + " -> ".join(cycle))

    return TraceabilityInformationModel(list(raw_types), link_types)


def _find_type_cycle(types: list[str], link_types: list[LinkType]) -> list[str] | None:
    """DFS over the downstream type graph; returns a cycle path if one exists."""
    adjacency: dict[str, list[str]] = {t: [] for t in types}
    for lt in link_types:
        if lt.direction == DOWNSTREAM:
            adjacency[lt.source_type].append(lt.target_type)

    WHITE, GRAY, BLACK = 0, 1, 2
    color = {t: WHITE for t in types}
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = GRAY
        stack.append(node)
        for nxt in adjacency[node]:
            if color[nxt] == GRAY:
                return stack[stack.index(nxt):] + [nxt]
            if color[nxt] == WHITE:
                found = visit(nxt)
                if found is not None:
                    return found
        stack.pop()
        color[node] = BLACK
        return None

    for t in types:
        if color[t] == WHITE:
            found = visit(t)
            if found is not None:
                return found
    return None


def ingest_snapshot(source: str | IO[str], tim: TraceabilityInformationModel) -> Snapshot:
    """Parse a snapshot document and validate it against the model.

    All violations are collected and reported together; a document that
    fails validation never yields a partially populated snapshot.

    Raises:
        ParseError: the document is malformed.
        ValidationError: duplicate ids, unknown artifact types, dangling
            link endpoints, or link type mismatches.
    """
    doc = _load_yaml(source, "snapshot")
    version = _require_str(doc, "version", "snapshot")

    raw_artifacts = doc.get("artifacts", [])
    raw_links = doc.get("links", [])
    if not isinstance(raw_artifacts, list):
        raise ParseError("snapshot: 'artifacts' must be a list")
    if not isinstance(raw_links, list):
        raise ParseError("snapshot: 'links' must be a list")

    violations: list[str] = []
    artifacts: dict[str, Artifact] = {}
    for entry in raw_artifacts:
        if not isinstance(entry, dict):
            raise ParseError("snapshot: each artifact must be a mapping")
        art_id = _require_str(entry, "id", "artifact")
        art_type = _require_str(entry, "type", f"artifact '{art_id}'")
        summary = entry.get("summary", "")
        body = entry.get("body", "")
        attributes = entry.get("attributes", {}) or {}
        if not isinstance(summary, str) or not isinstance(body, str):
            raise ParseError(f"artifact '{art_id}': summary and body must be strings")
        if not isinstance(attributes, dict) or not all(
            isinstance(k, str) and isinstance(v, str) for k, v in attributes.items()
        ):
            raise ParseError(f"artifact '{art_id}': attributes must map strings to strings")
        if art_id in artifacts:
            violations.append(f"duplicate artifact id '{art_id}'")
            continue
        if art_type not in tim.artifact_types:
            violations.append(f"artifact '{art_id}' has unknown type '{art_type}'")
            continue
        artifacts[art_id] = Artifact(art_id, art_type, summary, body, dict(attributes))

    links: list[TraceLink] = []
    seen_triples: set[tuple[str, str, str]] = set()
    for entry in raw_links:
        if not isinstance(entry, dict):
            raise ParseError("snapshot: each link must be a mapping")
        src = _require_str(entry, "source", "link")
        tgt = _require_str(entry, "target", "link")
        type_name = _require_str(entry, "type", f"link {src}->{tgt}")
        triple = (src, tgt, type_name)
        if triple in seen_triples:
            violations.append(f"duplicate link ({src}, {tgt}, {type_name})")
            continue
        seen_triples.add(triple)

        lt = tim.link_type(type_name)
        if lt is None:
            violations.append(f"link ({src}, {tgt}) has unknown link type '{type_name}'")
            continue
        violations.extend(_check_endpoint(src, lt.source_type, type_name, artifacts))
        violations.extend(_check_endpoint(tgt, lt.target_type, type_name, artifacts))
        links.append(TraceLink(src, tgt, type_name))

    if violations:
        raise ValidationError(violations)
    return Snapshot(version, artifacts, links, datetime.now(timezone.utc))


def _check_endpoint(
    endpoint: str, expected_type: str, link_name: str, artifacts: dict[str, Artifact]
) -> list[str]:
    """Validate one link endpoint against its declared type.

    Endpoints declared as reserved safety node types resolve against the
    safety-asset store later, not against the snapshot.
    """
    if expected_type in RESERVED_SAFETY_TYPES:
        return []
    artifact = artifacts.get(endpoint)
    if artifact is None:
        return [f"link '{link_name}' endpoint '{endpoint}' does not resolve in snapshot"]
    if artifact.artifact_type != expected_type:
        return [
            f"link '{link_name}' endpoint '{endpoint}' has type "
            f"'{artifact.artifact_type}', expected '{expected_type}'"
        ]
    return []
