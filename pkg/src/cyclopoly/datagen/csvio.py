from __future__ import annotations

import csv
import io
from importlib import resources
from pathlib import Path
from typing import Optional, TextIO, Union

from ..model import DataError, Dataset, validate_dataset

DEFAULT_LABEL_COLUMN = "class"
BUNDLED = ("iris", "wine")


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True


def read_csv(f: TextIO, label_column: Optional[str] = None) -> Dataset:
    rows = [r for r in csv.reader(f) if r]
    if not rows:
        raise DataError("empty CSV")
    header = None
    if not all(_is_number(c) for c in rows[0]):
        header, rows = [c.strip() for c in rows[0]], rows[1:]
    if label_column is None and header and DEFAULT_LABEL_COLUMN in header:
        label_column = DEFAULT_LABEL_COLUMN
    label_idx = None
    if label_column is not None:
        if header is None:
            raise DataError(f"label column {label_column!r} requested but the file has no header")
        if label_column not in header:
            raise DataError(f"label column {label_column!r} not in header {header}")
        label_idx = header.index(label_column)

    width = len(header) if header else len(rows[0]) if rows else 0
    values, labels = [], []
    line0 = 2 if header else 1
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DataError(f"ragged row {i} (line {line0 + i}): {len(row)} cells, expected {width}", row=i)
        vec = []
        for j, cell in enumerate(row):
            if j == label_idx:
                labels.append(cell.strip())
                continue
            try:
                vec.append(float(cell))
            except ValueError:
                name = header[j] if header else str(j)
                raise DataError(f"non-numeric cell {cell!r} at row {i} (line {line0 + i}), column {name!r}",
                                row=i, column=j) from None
        values.append(vec)
    names = None
    if header:
        names = [h for j, h in enumerate(header) if j != label_idx]
    return validate_dataset(Dataset(tuple(map(tuple, values)),
                                    tuple(labels) if label_idx is not None else None,
                                    tuple(names) if names else None))


def load_csv(path: Union[str, Path], label_column: Optional[str] = None) -> Dataset:
    """Load a comma-separated dataset; header names become attribute names.

    The label column (default ``class`` when present) becomes the class labels;
    every other column is an attribute, in file order.
    """
    with open(path, newline="", encoding="utf-8") as f:
        return read_csv(f, label_column)


def dumps_csv(ds: Dataset) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    names = list(ds.attribute_names or (f"x{j}" for j in range(ds.n)))
    w.writerow(names + ([DEFAULT_LABEL_COLUMN] if ds.labels is not None else []))
    for i, row in enumerate(ds.rows):
        cells = [repr(v) for v in row]
        if ds.labels is not None:
            cells.append(ds.labels[i])
        w.writerow(cells)
    return buf.getvalue()


def write_csv(ds: Dataset, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_csv(ds), encoding="utf-8")


def load_bundled(name: str) -> Dataset:
    """The vendored Iris (150 x 4) or Wine (178 x 13) table."""
    if name not in BUNDLED:
        raise ValueError(f"unknown bundled dataset {name!r}; choose from {BUNDLED}")
    text = resources.files("cyclopoly.data").joinpath(f"{name}.csv").read_text(encoding="utf-8")
    return read_csv(io.StringIO(text))
