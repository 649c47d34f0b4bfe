"""Plain-text file formats for flowers, complexes and edge labels.

Floats are written with 17 significant digits so that reading them back
gives the identical double.  Files use LF newlines only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Tuple, Union

from .complexpack import EdgeLabel, TriComplex, build_complex
from .flower import FlowerClass, NormalizedFlower, ULabel

FLOWER_HEADER = "sfkit-flower v1"
COMPLEX_HEADER = "sfkit-complex v1"
LABELS_HEADER = "sfkit-labels v1"

PathLike = Union[str, Path]


def fmt(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return "%.17g" % x


def _floats(text: str) -> Tuple[float, ...]:
    return tuple(float(x) for x in text.split(",")) if text.strip() else ()


def _write(path: PathLike, text: str):
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write(text)


def _lines(text: str, header: str):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0] != header:
        raise ValueError(f"missing header {header!r}")
    return lines[1:]


# flowers


@dataclass(frozen=True)
class FlowerRecord:
    n: int
    u: Tuple[float, ...]
    t: Optional[Tuple[float, ...]] = None
    r: Optional[Tuple[float, ...]] = None
    cls: Optional[str] = None

    @property
    def label(self) -> ULabel:
        return ULabel(self.u)

    @property
    def s(self) -> Tuple[float, ...]:
        return tuple(1.0 - x for x in self.u)


def flower_record(fl: NormalizedFlower, cls: Optional[FlowerClass] = None) -> FlowerRecord:
    return FlowerRecord(fl.n, fl.label.u, fl.t, fl.r, str(cls) if cls is not None else None)


def flower_text(rec: FlowerRecord) -> str:
    out = [FLOWER_HEADER, f"n={rec.n}", "u=" + ",".join(fmt(x) for x in rec.u),
           "s=" + ",".join(fmt(x) for x in rec.s)]
    if rec.t is not None:
        out.append("t=" + ",".join(fmt(x) for x in rec.t))
    if rec.r is not None:
        out.append("r=" + ",".join(fmt(x) for x in rec.r))
    if rec.cls is not None:
        out.append(f"class={rec.cls}")
    return "\n".join(out) + "\n"


def parse_flower(text: str) -> FlowerRecord:
    fields = {}
    for ln in _lines(text, FLOWER_HEADER):
        key, sep, val = ln.partition("=")
        if not sep:
            raise ValueError(f"malformed line {ln!r}")
        fields[key.strip()] = val.strip()
    if "n" not in fields:
        raise ValueError("flower file lacks n=")
    n = int(fields["n"])
    if "u" in fields:
        u = _floats(fields["u"])
    elif "s" in fields:
        u = tuple(1.0 - x for x in _floats(fields["s"]))
    else:
        raise ValueError("flower file lacks u= or s=")
    if len(u) != n:
        raise ValueError(f"expected {n} label entries, got {len(u)}")
    t = _floats(fields["t"]) if "t" in fields else None
    r = _floats(fields["r"]) if "r" in fields else None
    return FlowerRecord(n, u, t, r, fields.get("class"))


def write_flower(path: PathLike, rec: FlowerRecord):
    _write(path, flower_text(rec))


def read_flower(path: PathLike) -> FlowerRecord:
    return parse_flower(Path(path).read_text())


# complexes


def complex_text(K: TriComplex) -> str:
    out = [COMPLEX_HEADER, f"V={K.n_vertices}"]
    out += [f"{a} {b} {c}" for a, b, c in K.faces]
    return "\n".join(out) + "\n"


def parse_complex(text: str) -> TriComplex:
    lines = _lines(text, COMPLEX_HEADER)
    if not lines or not lines[0].startswith("V="):
        raise ValueError("complex file lacks V=")
    V = int(lines[0][2:])
    faces = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"malformed face line {ln!r}")
        faces.append(tuple(int(x) for x in parts))
    return build_complex(faces, V)


def write_complex(path: PathLike, K: TriComplex):
    _write(path, complex_text(K))


def read_complex(path: PathLike) -> TriComplex:
    return parse_complex(Path(path).read_text())


# edge labels


def labels_text(label: EdgeLabel) -> str:
    out = [LABELS_HEADER]
    out += [f"{a} {b} {fmt(s)}" for (a, b), s in sorted(label.items())]
    return "\n".join(out) + "\n"


def parse_labels(text: str) -> EdgeLabel:
    out = EdgeLabel()
    for ln in _lines(text, LABELS_HEADER):
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"malformed label line {ln!r}")
        a, b = int(parts[0]), int(parts[1])
        out[(min(a, b), max(a, b))] = float(parts[2])
    return out


def write_labels(path: PathLike, label: EdgeLabel):
    _write(path, labels_text(label))


def read_labels(path: PathLike) -> EdgeLabel:
    return parse_labels(Path(path).read_text())
