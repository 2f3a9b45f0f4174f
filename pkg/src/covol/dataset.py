"""Loading the bundled field table and its metadata."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

FIELDS_ENV = "COVOL_FIELDS"


@dataclass(frozen=True)
class DatasetRecord:
    degree: int
    disc: int
    poly: tuple[int, ...]
    fund_units: tuple[tuple[Fraction, ...], ...]
    class_number: int
    class_2rank: int
    overrides: dict = field(default_factory=dict, compare=False)
    source: str = ""

    @classmethod
    def from_json(cls, obj: dict) -> "DatasetRecord":
        return cls(
            degree=int(obj["degree"]),
            disc=int(obj["disc"]),
            poly=tuple(int(c) for c in obj["poly"]),
            fund_units=tuple(tuple(Fraction(c) for c in u) for u in obj.get("fund_units", [])),
            class_number=int(obj["class_number"]),
            class_2rank=int(obj.get("class_2rank", 0)),
            overrides={int(p): tuple(tuple(ef) for ef in v) for p, v in obj.get("overrides", {}).items()},
            source=obj.get("source", ""),
        )


@dataclass(frozen=True)
class Dataset:
    records: tuple[DatasetRecord, ...]
    complete_below: dict[int, int]
    source: str
    path: str

    def by_disc(self, d: int, degree: int | None = None) -> DatasetRecord:
        for r in self.records:
            if r.disc == d and (degree is None or r.degree == degree):
                return r
        raise KeyError(f"no field with discriminant {d} in {self.path}")

    def of_degree(self, m: int) -> list[DatasetRecord]:
        return [r for r in self.records if r.degree == m]


def _data_file(name: str) -> Path:
    return Path(str(resources.files("covol") / "data" / name))


def default_fields_path() -> Path:
    env = os.environ.get(FIELDS_ENV)
    return Path(env) if env else _data_file("fields.jsonl")


@lru_cache(maxsize=8)
def load_dataset(path: str | None = None) -> Dataset:
    p = Path(path) if path else default_fields_path()
    recs = []
    with open(p) as fh:
        for line in fh:
            line = line.strip()
            if line:
                recs.append(DatasetRecord.from_json(json.loads(line)))
    recs.sort(key=lambda r: (r.degree, r.disc))
    meta_path = p.with_name(p.stem + ".meta.json")
    complete, source = {}, "unspecified"
    if meta_path.exists():
        meta = json.loads(meta_path.read_text())
        complete = {int(m): int(d) for m, d in meta.get("complete_below", {}).items()}
        source = meta.get("source", source)
    return Dataset(tuple(recs), complete, source, str(p))


@lru_cache(maxsize=1)
def printed_tables() -> dict:
    """Values as printed in the reference tables (strings, unreduced)."""
    return json.loads(_data_file("printed_tables.json").read_text())
