"""Use-case catalog: the input data model for the selection engine.

A catalog bundles the KPI requirement set, technical requirements, key
values and their indicators (KVIs), design principles, and the candidate
technological enablers for one use case. Catalogs are immutable once
loaded; loaders are strict (unknown fields are rejected) and every catalog
returned by :func:`load_catalog` passes :func:`validate_catalog`.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import zipfile
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Mapping

from .canonical import content_digest
from .errors import InputSyntaxError, SchemaError

logger = logging.getLogger(__name__)

TRL_MIN = 1
TRL_MAX = 9
ALLOWED_IMPACTS = (-1, 0, 1)


class Pillar(str, Enum):
    ENVIRONMENTAL = "Environmental"
    SOCIAL = "Social"
    ECONOMIC = "Economic"


class KviCategory(str, Enum):
    """The six value-indicator categories coverage is measured against."""

    ENERGY = "Energy"
    MATERIALS_WASTE = "MaterialsWaste"
    SAFETY = "Safety"
    TRUSTWORTHINESS_PRIVACY_SECURITY = "TrustworthinessPrivacySecurity"
    PRODUCTIVITY_EFFICIENCY = "ProductivityEfficiency"
    COSTS = "Costs"


@dataclass(frozen=True)
class KpiRequirement:
    id: str
    name: str
    target: str
    unit: str
    rationale: str


@dataclass(frozen=True)
class TechnicalRequirement:
    id: str
    label: str


@dataclass(frozen=True)
class Kvi:
    id: str
    description: str
    category: KviCategory
    pillar: Pillar
    requirement_ids: frozenset[str]


@dataclass(frozen=True)
class KeyValue:
    id: str
    pillar: Pillar
    description: str
    kvi_ids: frozenset[str]


@dataclass(frozen=True)
class DesignPrinciple:
    id: str
    name: str


@dataclass(frozen=True)
class Enabler:
    id: str
    name: str
    category: str
    trl: int
    migration_critical: bool
    kpi_impacts: Mapping[str, int]
    principle_ids: frozenset[str]
    dependency_ids: frozenset[str]
    requirement_ids: frozenset[str]


@dataclass(frozen=True)
class Violation:
    """One referential-integrity or range violation, as data."""

    entity_kind: str
    entity_id: str
    field: str
    message: str


@dataclass(frozen=True)
class Catalog:
    use_case_name: str
    kpis: tuple[KpiRequirement, ...]
    requirements: tuple[TechnicalRequirement, ...]
    kvis: tuple[Kvi, ...]
    key_values: tuple[KeyValue, ...]
    principles: tuple[DesignPrinciple, ...]
    enablers: tuple[Enabler, ...]

    @cached_property
    def enablers_by_id(self) -> Mapping[str, Enabler]:
        return {e.id: e for e in self.enablers}

    @cached_property
    def kvis_by_id(self) -> Mapping[str, Kvi]:
        return {k.id: k for k in self.kvis}

    @cached_property
    def principles_by_id(self) -> Mapping[str, DesignPrinciple]:
        return {p.id: p for p in self.principles}

    @cached_property
    def kpi_ids(self) -> frozenset[str]:
        return frozenset(k.id for k in self.kpis)

    @cached_property
    def requirement_ids(self) -> frozenset[str]:
        return frozenset(r.id for r in self.requirements)


# ---------------------------------------------------------------------------
# strict field access helpers

def _check_fields(obj: Mapping[str, Any], required: Iterable[str], where: str) -> None:
    if not isinstance(obj, Mapping):
        raise SchemaError(f"{where}: expected an object, got {type(obj).__name__}")
    required = set(required)
    present = set(obj)
    missing = sorted(required - present)
    unknown = sorted(present - required)
    if missing:
        raise SchemaError(f"{where}: missing required field(s) {', '.join(missing)}")
    if unknown:
        raise SchemaError(f"{where}: unknown field(s) {', '.join(unknown)}")


def _as_str(value: Any, field: str, where: str) -> str:
    if not isinstance(value, str):
        raise SchemaError(f"{where}: field '{field}' must be a string, got {value!r}")
    return value


def _as_bool(value: Any, field: str, where: str) -> bool:
    if not isinstance(value, bool):
        raise SchemaError(f"{where}: field '{field}' must be a boolean, got {value!r}")
    return value


def _as_int(value: Any, field: str, where: str) -> int:
    # bool is an int subclass and must not slip through
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"{where}: field '{field}' must be an integer, got {value!r}")
    return value


def _as_id_set(value: Any, field: str, where: str) -> frozenset[str]:
    if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
        raise SchemaError(f"{where}: field '{field}' must be a list of strings")
    return frozenset(value)


def _as_trl(value: Any, field: str, where: str) -> int:
    n = _as_int(value, field, where)
    if not TRL_MIN <= n <= TRL_MAX:
        raise SchemaError(
            f"{where}: field '{field}' must be in [{TRL_MIN}, {TRL_MAX}], got {n}"
        )
    return n


def _as_impacts(value: Any, field: str, where: str) -> dict[str, int]:
    if not isinstance(value, Mapping):
        raise SchemaError(f"{where}: field '{field}' must be an object of KPI impacts")
    impacts: dict[str, int] = {}
    for key, raw in value.items():
        if not isinstance(key, str):
            raise SchemaError(f"{where}: impact keys must be KPI ids")
        n = _as_int(raw, f"{field}[{key}]", where)
        if n not in ALLOWED_IMPACTS:
            raise SchemaError(
                f"{where}: field '{field}[{key}]' must be one of {ALLOWED_IMPACTS}, got {n}"
            )
        impacts[key] = n
    return impacts


def _as_enum(value: Any, enum_cls: type, field: str, where: str):
    raw = _as_str(value, field, where)
    try:
        return enum_cls(raw)
    except ValueError:
        allowed = ", ".join(m.value for m in enum_cls)
        raise SchemaError(
            f"{where}: field '{field}' must be one of [{allowed}], got {raw!r}"
        ) from None


# ---------------------------------------------------------------------------
# parsing from an untyped JSON-shaped object

_TOP_FIELDS = (
    "use_case_name",
    "kpis",
    "requirements",
    "kvis",
    "key_values",
    "principles",
    "enablers",
)


def parse_catalog(obj: Any, validate: bool = True) -> Catalog:
    """Build a :class:`Catalog` from a JSON-shaped object, strictly.

    Raises :class:`SchemaError` for missing/unknown fields, wrong types,
    out-of-range values, or (unless ``validate=False``) referential
    violations; with ``validate=False`` callers inspect
    :func:`validate_catalog` themselves.
    """
    _check_fields(obj, _TOP_FIELDS, "catalog")
    name = _as_str(obj["use_case_name"], "use_case_name", "catalog")

    def rows(field: str) -> list:
        value = obj[field]
        if not isinstance(value, list):
            raise SchemaError(f"catalog: field '{field}' must be a list")
        return value

    kpis = []
    for i, row in enumerate(rows("kpis")):
        where = f"kpis[{i}]"
        _check_fields(row, ("id", "name", "target", "unit", "rationale"), where)
        kpis.append(
            KpiRequirement(
                id=_as_str(row["id"], "id", where),
                name=_as_str(row["name"], "name", where),
                target=_as_str(row["target"], "target", where),
                unit=_as_str(row["unit"], "unit", where),
                rationale=_as_str(row["rationale"], "rationale", where),
            )
        )

    requirements = []
    for i, row in enumerate(rows("requirements")):
        where = f"requirements[{i}]"
        _check_fields(row, ("id", "label"), where)
        requirements.append(
            TechnicalRequirement(
                id=_as_str(row["id"], "id", where),
                label=_as_str(row["label"], "label", where),
            )
        )

    kvis = []
    for i, row in enumerate(rows("kvis")):
        where = f"kvis[{i}]"
        _check_fields(row, ("id", "description", "category", "pillar", "requirement_ids"), where)
        kvis.append(
            Kvi(
                id=_as_str(row["id"], "id", where),
                description=_as_str(row["description"], "description", where),
                category=_as_enum(row["category"], KviCategory, "category", where),
                pillar=_as_enum(row["pillar"], Pillar, "pillar", where),
                requirement_ids=_as_id_set(row["requirement_ids"], "requirement_ids", where),
            )
        )

    key_values = []
    for i, row in enumerate(rows("key_values")):
        where = f"key_values[{i}]"
        _check_fields(row, ("id", "pillar", "description", "kvi_ids"), where)
        key_values.append(
            KeyValue(
                id=_as_str(row["id"], "id", where),
                pillar=_as_enum(row["pillar"], Pillar, "pillar", where),
                description=_as_str(row["description"], "description", where),
                kvi_ids=_as_id_set(row["kvi_ids"], "kvi_ids", where),
            )
        )

    principles = []
    for i, row in enumerate(rows("principles")):
        where = f"principles[{i}]"
        _check_fields(row, ("id", "name"), where)
        principles.append(
            DesignPrinciple(
                id=_as_str(row["id"], "id", where),
                name=_as_str(row["name"], "name", where),
            )
        )

    enablers = []
    for i, row in enumerate(rows("enablers")):
        where = f"enablers[{i}]"
        _check_fields(
            row,
            (
                "id",
                "name",
                "category",
                "trl",
                "migration_critical",
                "kpi_impacts",
                "principle_ids",
                "dependency_ids",
                "requirement_ids",
            ),
            where,
        )
        eid = _as_str(row["id"], "id", where)
        where = f"enabler '{eid}'"
        enablers.append(
            Enabler(
                id=eid,
                name=_as_str(row["name"], "name", where),
                category=_as_str(row["category"], "category", where),
                trl=_as_trl(row["trl"], "trl", where),
                migration_critical=_as_bool(row["migration_critical"], "migration_critical", where),
                kpi_impacts=_as_impacts(row["kpi_impacts"], "kpi_impacts", where),
                principle_ids=_as_id_set(row["principle_ids"], "principle_ids", where),
                dependency_ids=_as_id_set(row["dependency_ids"], "dependency_ids", where),
                requirement_ids=_as_id_set(row["requirement_ids"], "requirement_ids", where),
            )
        )

    catalog = Catalog(
        use_case_name=name,
        kpis=tuple(kpis),
        requirements=tuple(requirements),
        kvis=tuple(kvis),
        key_values=tuple(key_values),
        principles=tuple(principles),
        enablers=tuple(enablers),
    )
    violations = validate_catalog(catalog) if validate else []
    if violations:
        first = violations[0]
        raise SchemaError(
            f"catalog failed validation with {len(violations)} violation(s); first: "
            f"{first.entity_kind} '{first.entity_id}' field '{first.field}': {first.message}"
        )
    return catalog


# ---------------------------------------------------------------------------
# validation (returns violations as data, never raises)

def validate_catalog(catalog: Catalog) -> list[Violation]:
    """Referential-integrity and range checks over an in-memory catalog."""
    violations: list[Violation] = []

    def add(kind: str, entity_id: str, field: str, message: str) -> None:
        violations.append(Violation(kind, entity_id, field, message))

    for kind, items in (
        ("kpi", catalog.kpis),
        ("requirement", catalog.requirements),
        ("kvi", catalog.kvis),
        ("key_value", catalog.key_values),
        ("principle", catalog.principles),
        ("enabler", catalog.enablers),
    ):
        seen: set[str] = set()
        for item in items:
            if not item.id:
                add(kind, item.id, "id", "id must be non-empty")
            if item.id in seen:
                add(kind, item.id, "id", f"duplicate {kind} id")
            seen.add(item.id)

    for kpi in catalog.kpis:
        if not kpi.name:
            add("kpi", kpi.id, "name", "name must be non-empty")

    kpi_ids = catalog.kpi_ids
    requirement_ids = catalog.requirement_ids
    kvi_ids = {k.id for k in catalog.kvis}
    principle_ids = {p.id for p in catalog.principles}
    enabler_ids = {e.id for e in catalog.enablers}

    for kvi in catalog.kvis:
        if not kvi.requirement_ids:
            add("kvi", kvi.id, "requirement_ids", "must reference at least one requirement")
        for rid in sorted(kvi.requirement_ids - requirement_ids):
            add("kvi", kvi.id, "requirement_ids", f"unknown requirement '{rid}'")

    for kv in catalog.key_values:
        if not kv.kvi_ids:
            add("key_value", kv.id, "kvi_ids", "must reference at least one KVI")
        for kid in sorted(kv.kvi_ids - kvi_ids):
            add("key_value", kv.id, "kvi_ids", f"unknown KVI '{kid}'")

    for e in catalog.enablers:
        if not TRL_MIN <= e.trl <= TRL_MAX:
            add("enabler", e.id, "trl", f"trl must be in [{TRL_MIN}, {TRL_MAX}], got {e.trl}")
        for kid in sorted(set(e.kpi_impacts) - kpi_ids):
            add("enabler", e.id, "kpi_impacts", f"unknown KPI '{kid}'")
        for kid, impact in sorted(e.kpi_impacts.items()):
            if impact not in ALLOWED_IMPACTS:
                add(
                    "enabler",
                    e.id,
                    "kpi_impacts",
                    f"impact for '{kid}' must be one of {ALLOWED_IMPACTS}, got {impact}",
                )
        if e.id in e.dependency_ids:
            add("enabler", e.id, "dependency_ids", "an enabler cannot depend on itself")
        for did in sorted(e.dependency_ids - enabler_ids):
            add("enabler", e.id, "dependency_ids", f"unknown enabler '{did}'")
        for pid in sorted(e.principle_ids - principle_ids):
            add("enabler", e.id, "principle_ids", f"unknown principle '{pid}'")
        for rid in sorted(e.requirement_ids - requirement_ids):
            add("enabler", e.id, "requirement_ids", f"unknown requirement '{rid}'")

    return violations


# ---------------------------------------------------------------------------
# loading

def load_catalog(source: bytes, fmt: str = "json", validate: bool = True) -> Catalog:
    """Load a catalog from raw bytes in ``json`` or ``csv-bundle`` format."""
    if fmt == "json":
        try:
            obj = json.loads(source.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise InputSyntaxError(f"catalog is not valid UTF-8: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputSyntaxError(
                f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
            ) from exc
        return parse_catalog(obj, validate=validate)
    if fmt == "csv-bundle":
        return _load_csv_bundle(source, validate=validate)
    raise SchemaError(f"unknown catalog format '{fmt}' (expected 'json' or 'csv-bundle')")


def load_catalog_path(path: str | Path, validate: bool = True) -> Catalog:
    """Convenience loader dispatching on the path: .json, .zip, or a directory
    of bundle CSV files."""
    path = Path(path)
    if path.is_dir():
        members = {}
        for name in _BUNDLE_FILES:
            member = path / name
            if member.exists():
                members[name] = member.read_bytes()
        for extra in path.glob("*.csv"):
            if extra.name not in _BUNDLE_FILES:
                members[extra.name] = b""
        return _catalog_from_members(members, validate=validate)
    data = path.read_bytes()
    if path.suffix.lower() == ".zip":
        return load_catalog(data, "csv-bundle", validate=validate)
    return load_catalog(data, "json", validate=validate)


_BUNDLE_FILES = (
    "use_case.csv",
    "kpis.csv",
    "requirements.csv",
    "kvis.csv",
    "key_values.csv",
    "principles.csv",
    "enablers.csv",
)

_BUNDLE_HEADERS = {
    "use_case.csv": ["use_case_name"],
    "kpis.csv": ["id", "name", "target", "unit", "rationale"],
    "requirements.csv": ["id", "label"],
    "kvis.csv": ["id", "description", "category", "pillar", "requirement_ids"],
    "key_values.csv": ["id", "pillar", "description", "kvi_ids"],
    "principles.csv": ["id", "name"],
    "enablers.csv": [
        "id",
        "name",
        "category",
        "trl",
        "migration_critical",
        "kpi_impacts",
        "principle_ids",
        "dependency_ids",
        "requirement_ids",
    ],
}

_SET_SEPARATOR = ";"


def _load_csv_bundle(source: bytes, validate: bool = True) -> Catalog:
    try:
        archive = zipfile.ZipFile(io.BytesIO(source))
    except zipfile.BadZipFile as exc:
        raise InputSyntaxError(f"catalog bundle is not a zip archive: {exc}") from exc
    members = {info.filename: archive.read(info) for info in archive.infolist()}
    return _catalog_from_members(members, validate=validate)


def _catalog_from_members(members: Mapping[str, bytes], validate: bool = True) -> Catalog:
    missing = sorted(set(_BUNDLE_FILES) - set(members))
    unknown = sorted(set(members) - set(_BUNDLE_FILES))
    if missing:
        raise SchemaError(f"catalog bundle: missing file(s) {', '.join(missing)}")
    if unknown:
        raise SchemaError(f"catalog bundle: unknown file(s) {', '.join(unknown)}")

    tables = {name: _read_csv(name, members[name]) for name in _BUNDLE_FILES}

    use_case = tables["use_case.csv"]
    if len(use_case) != 1:
        raise SchemaError(
            f"use_case.csv: expected exactly one record, got {len(use_case)}"
        )

    def split_ids(cell: str) -> list[str]:
        cell = cell.strip()
        return [part for part in cell.split(_SET_SEPARATOR) if part] if cell else []

    def parse_impacts(cell: str, where: str) -> dict[str, Any]:
        impacts: dict[str, Any] = {}
        for part in split_ids(cell):
            if ":" not in part:
                raise SchemaError(
                    f"{where}: kpi_impacts entry '{part}' must look like 'kpi-id:impact'"
                )
            key, _, raw = part.partition(":")
            try:
                impacts[key] = int(raw)
            except ValueError:
                raise SchemaError(
                    f"{where}: kpi_impacts entry '{part}' has a non-integer impact"
                ) from None
        return impacts

    def parse_int(cell: str, field: str, where: str) -> Any:
        try:
            return int(cell)
        except ValueError:
            raise SchemaError(f"{where}: field '{field}' must be an integer, got {cell!r}") from None

    def parse_bool(cell: str, field: str, where: str) -> Any:
        lowered = cell.strip().lower()
        if lowered in ("true", "yes", "1"):
            return True
        if lowered in ("false", "no", "0"):
            return False
        raise SchemaError(f"{where}: field '{field}' must be true/false, got {cell!r}")

    obj = {
        "use_case_name": use_case[0]["use_case_name"],
        "kpis": tables["kpis.csv"],
        "requirements": tables["requirements.csv"],
        "principles": tables["principles.csv"],
        "kvis": [
            {**row, "requirement_ids": split_ids(row["requirement_ids"])}
            for row in tables["kvis.csv"]
        ],
        "key_values": [
            {**row, "kvi_ids": split_ids(row["kvi_ids"])}
            for row in tables["key_values.csv"]
        ],
        "enablers": [
            {
                **row,
                "trl": parse_int(row["trl"], "trl", f"enablers.csv row {i + 2}"),
                "migration_critical": parse_bool(
                    row["migration_critical"], "migration_critical", f"enablers.csv row {i + 2}"
                ),
                "kpi_impacts": parse_impacts(row["kpi_impacts"], f"enablers.csv row {i + 2}"),
                "principle_ids": split_ids(row["principle_ids"]),
                "dependency_ids": split_ids(row["dependency_ids"]),
                "requirement_ids": split_ids(row["requirement_ids"]),
            }
            for i, row in enumerate(tables["enablers.csv"])
        ],
    }
    return parse_catalog(obj, validate=validate)


def _read_csv(name: str, data: bytes) -> list[dict[str, str]]:
    expected = _BUNDLE_HEADERS[name]
    try:
        text = data.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise InputSyntaxError(f"{name} is not valid UTF-8: {exc}") from exc
    reader = csv.reader(io.StringIO(text))
    try:
        rows = list(reader)
    except csv.Error as exc:
        raise InputSyntaxError(f"{name} line {reader.line_num}: {exc}") from exc
    if not rows:
        raise SchemaError(f"{name}: missing header row")
    header = rows[0]
    if header != expected:
        raise SchemaError(
            f"{name}: header must be exactly {','.join(expected)}, got {','.join(header)}"
        )
    records = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(expected):
            raise SchemaError(
                f"{name} row {lineno}: expected {len(expected)} column(s), got {len(row)}"
            )
        records.append(dict(zip(expected, row)))
    return records


# ---------------------------------------------------------------------------
# serialization

def catalog_to_jsonable(catalog: Catalog) -> dict[str, Any]:
    """Plain-JSON form preserving entity order; set-valued fields sorted."""
    return {
        "use_case_name": catalog.use_case_name,
        "kpis": [
            {"id": k.id, "name": k.name, "target": k.target, "unit": k.unit, "rationale": k.rationale}
            for k in catalog.kpis
        ],
        "requirements": [{"id": r.id, "label": r.label} for r in catalog.requirements],
        "kvis": [
            {
                "id": k.id,
                "description": k.description,
                "category": k.category.value,
                "pillar": k.pillar.value,
                "requirement_ids": sorted(k.requirement_ids),
            }
            for k in catalog.kvis
        ],
        "key_values": [
            {
                "id": k.id,
                "pillar": k.pillar.value,
                "description": k.description,
                "kvi_ids": sorted(k.kvi_ids),
            }
            for k in catalog.key_values
        ],
        "principles": [{"id": p.id, "name": p.name} for p in catalog.principles],
        "enablers": [
            {
                "id": e.id,
                "name": e.name,
                "category": e.category,
                "trl": e.trl,
                "migration_critical": e.migration_critical,
                "kpi_impacts": {k: e.kpi_impacts[k] for k in sorted(e.kpi_impacts)},
                "principle_ids": sorted(e.principle_ids),
                "dependency_ids": sorted(e.dependency_ids),
                "requirement_ids": sorted(e.requirement_ids),
            }
            for e in catalog.enablers
        ],
    }


def dumps_catalog(catalog: Catalog) -> bytes:
    return json.dumps(catalog_to_jsonable(catalog), indent=2, ensure_ascii=False).encode("utf-8") + b"\n"


def catalog_digest(catalog: Catalog) -> str:
    """Content digest of the order-insensitive canonical form."""
    jsonable = catalog_to_jsonable(catalog)
    for field in ("kpis", "requirements", "kvis", "key_values", "principles", "enablers"):
        jsonable[field] = sorted(jsonable[field], key=lambda row: row["id"])
    return content_digest(jsonable)


def dumps_csv_bundle(catalog: Catalog) -> bytes:
    """Render a catalog back to the CSV bundle zip (ingestion counterpart)."""
    jsonable = catalog_to_jsonable(catalog)

    def join(ids: list[str]) -> str:
        return _SET_SEPARATOR.join(ids)

    def impacts_cell(impacts: Mapping[str, int]) -> str:
        return _SET_SEPARATOR.join(f"{k}:{impacts[k]}" for k in sorted(impacts))

    files: dict[str, list[list[str]]] = {
        "use_case.csv": [[jsonable["use_case_name"]]],
        "kpis.csv": [[k["id"], k["name"], k["target"], k["unit"], k["rationale"]] for k in jsonable["kpis"]],
        "requirements.csv": [[r["id"], r["label"]] for r in jsonable["requirements"]],
        "kvis.csv": [
            [k["id"], k["description"], k["category"], k["pillar"], join(k["requirement_ids"])]
            for k in jsonable["kvis"]
        ],
        "key_values.csv": [
            [k["id"], k["pillar"], k["description"], join(k["kvi_ids"])] for k in jsonable["key_values"]
        ],
        "principles.csv": [[p["id"], p["name"]] for p in jsonable["principles"]],
        "enablers.csv": [
            [
                e["id"],
                e["name"],
                e["category"],
                str(e["trl"]),
                "true" if e["migration_critical"] else "false",
                impacts_cell(e["kpi_impacts"]),
                join(e["principle_ids"]),
                join(e["dependency_ids"]),
                join(e["requirement_ids"]),
            ]
            for e in jsonable["enablers"]
        ],
    }

    buffer = io.BytesIO()
    with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as archive:
        for name in _BUNDLE_FILES:
            out = io.StringIO()
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(_BUNDLE_HEADERS[name])
            writer.writerows(files[name])
            archive.writestr(name, out.getvalue())
    return buffer.getvalue()


def violations_to_jsonable(violations: list[Violation]) -> list[dict[str, str]]:
    return [
        {
            "entity_kind": v.entity_kind,
            "entity_id": v.entity_id,
            "field": v.field,
            "message": v.message,
        }
        for v in violations
    ]
