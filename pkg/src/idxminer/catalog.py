"""Schema catalog: tables, columns, cardinalities, and name resolution.

The catalog is the ground truth every extracted column reference is resolved
against. Identifiers are case-insensitive on input and canonicalized to
lowercase, so equality downstream is plain string equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import (
    AmbiguousColumnError,
    CatalogError,
    UnknownColumnError,
    UnknownTableError,
)


@dataclass(frozen=True, order=True)
class AttributeRef:
    """A column pinned to its owning table, in canonical lowercase form."""

    table: str
    column: str

    def __post_init__(self):
        object.__setattr__(self, "table", self.table.lower())
        object.__setattr__(self, "column", self.column.lower())

    def __str__(self) -> str:
        return f"{self.table}.{self.column}"

    @classmethod
    def parse(cls, text: str) -> "AttributeRef":
        table, sep, column = text.partition(".")
        if not sep or not table or not column:
            raise CatalogError(f"bad attribute reference {text!r}, expected 'table.column'")
        return cls(table, column)


@dataclass(frozen=True)
class CatalogTable:
    """Table metadata driving selection strategies and the cost model."""

    name: str
    row_count: int
    is_large: bool = False
    columns: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "name", self.name.lower())
        object.__setattr__(
            self, "columns", tuple((c.lower(), k) for c, k in self.columns)
        )
        if self.row_count < 0:
            raise CatalogError(f"table {self.name}: row_count must be >= 0")
        seen = set()
        for column, cardinality in self.columns:
            if column in seen:
                raise CatalogError(f"table {self.name}: duplicate column {column!r}")
            seen.add(column)
            if cardinality < 1:
                raise CatalogError(
                    f"table {self.name}.{column}: cardinality must be >= 1"
                )
            if self.row_count > 0 and cardinality > self.row_count:
                raise CatalogError(
                    f"table {self.name}.{column}: cardinality {cardinality} "
                    f"exceeds row_count {self.row_count}"
                )

    def has_column(self, column: str) -> bool:
        column = column.lower()
        return any(c == column for c, _ in self.columns)

    def cardinality(self, column: str) -> int:
        column = column.lower()
        for c, k in self.columns:
            if c == column:
                return k
        raise UnknownColumnError(f"table {self.name} has no column {column!r}")


class Catalog:
    """Lookup structure over a set of tables.

    Resolution of an unqualified column succeeds only when exactly one table
    owns it; anything else is a hard error because a wrong table assignment
    would corrupt every downstream recommendation.
    """

    def __init__(self, tables: Iterable[CatalogTable]):
        self._tables: dict[str, CatalogTable] = {}
        self._owners: dict[str, list[str]] = {}
        for table in tables:
            if table.name in self._tables:
                raise CatalogError(f"duplicate table {table.name!r}")
            self._tables[table.name] = table
            for column, _ in table.columns:
                self._owners.setdefault(column, []).append(table.name)

    @property
    def tables(self) -> tuple[CatalogTable, ...]:
        return tuple(self._tables.values())

    def has_table(self, name: str) -> bool:
        return name.lower() in self._tables

    def table(self, name: str) -> CatalogTable:
        try:
            return self._tables[name.lower()]
        except KeyError:
            raise UnknownTableError(f"unknown table {name!r}") from None

    def resolve(self, column: str, qualifier: str | None = None) -> AttributeRef:
        column = column.lower()
        if qualifier is not None:
            table = self.table(qualifier)
            if not table.has_column(column):
                raise UnknownColumnError(
                    f"table {table.name!r} has no column {column!r}"
                )
            return AttributeRef(table.name, column)
        owners = self._owners.get(column, [])
        if not owners:
            raise UnknownColumnError(f"unknown column {column!r}")
        if len(owners) > 1:
            raise AmbiguousColumnError(
                f"column {column!r} is ambiguous, owned by tables "
                + ", ".join(sorted(owners))
            )
        return AttributeRef(owners[0], column)

    @classmethod
    def from_json(cls, text: str) -> "Catalog":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"catalog is not valid JSON: {exc}") from exc
        if not isinstance(raw, list):
            raise CatalogError("catalog must be a JSON array of tables")
        tables = []
        for entry in raw:
            if not isinstance(entry, dict):
                raise CatalogError("each catalog entry must be an object")
            tables.append(_table_from_obj(entry))
        return cls(tables)


def _table_from_obj(entry: dict) -> CatalogTable:
    try:
        name = entry["name"]
        row_count = entry["row_count"]
        columns_raw = entry["columns"]
    except KeyError as exc:
        raise CatalogError(f"catalog table is missing field {exc.args[0]!r}") from None
    is_large = entry.get("is_large", False)
    if not isinstance(name, str) or not isinstance(row_count, int) or isinstance(row_count, bool):
        raise CatalogError(f"table {name!r}: 'name' must be a string and 'row_count' an integer")
    if not isinstance(is_large, bool):
        raise CatalogError(f"table {name!r}: 'is_large' must be a boolean")
    if not isinstance(columns_raw, list):
        raise CatalogError(f"table {name!r}: 'columns' must be an array")
    columns = []
    for col in columns_raw:
        if not isinstance(col, dict) or "name" not in col or "cardinality" not in col:
            raise CatalogError(
                f"table {name!r}: each column needs 'name' and 'cardinality'"
            )
        if not isinstance(col["cardinality"], int) or isinstance(col["cardinality"], bool):
            raise CatalogError(f"table {name!r}.{col['name']}: 'cardinality' must be an integer")
        columns.append((col["name"], col["cardinality"]))
    return CatalogTable(name, row_count, is_large, tuple(columns))


def load_catalog(path: str | Path) -> Catalog:
    """Read a catalog JSON file from disk."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogError(f"cannot read catalog file {path}: {exc}") from exc
    return Catalog.from_json(text)
