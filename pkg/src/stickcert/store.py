"""Coordinate-file parsing, bundled fixtures, and a file-backed catalog.

Coordinate files are whitespace- or tab-separated rows of three integers,
with ``#`` comments; comma and underscore digit separators are tolerated
(``10,000,000`` parses as 10000000).  Header comments may declare a name and
a rational scale; the default scale is 1e-7, matching the published data.

The catalog persists one plain-text record per knot under
``catalog/<name>/`` (record.txt, coords.tsv, certs/NNN.txt) with a
fingerprint check on read and an advisory lock file for writers.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .diagram import Diagram, fingerprint, parse_pd, write_pd
from .geom import DEFAULT_SCALE, Polygon3


class StoreError(ValueError):
    """Malformed coordinate text or catalog failure."""


def _parse_scale(text: str) -> Fraction:
    s = text.strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            return Fraction(int(num), int(den))
        if "^" in s:
            base, exp = s.split("^", 1)
            b, e = int(base), int(exp)
            return Fraction(b) ** e
        if "e" in s.lower():
            mant, exp = s.lower().split("e", 1)
            return Fraction(mant) * Fraction(10) ** int(exp)
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise StoreError(f"bad scale {text!r}") from exc


def _scale_text(scale: Fraction) -> str:
    return f"{scale.numerator}/{scale.denominator}"


def parse_coordinates(
    text: str,
    scale: Fraction | None = None,
    name: str | None = None,
) -> Polygon3:
    """Parse a coordinate file into a Polygon3 with exact integer vertices."""
    rows: list[tuple[int, int, int]] = []
    header_scale: Fraction | None = None
    header_name: str | None = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.lower().startswith("scale:"):
                header_scale = _parse_scale(body.split(":", 1)[1])
            elif body.lower().startswith("name:"):
                header_name = body.split(":", 1)[1].strip()
            continue
        if not stripped:
            continue
        fields = stripped.split()
        if len(fields) != 3:
            raise StoreError(f"line {lineno}: expected 3 fields, got {len(fields)}")
        try:
            rows.append(
                tuple(int(f.replace(",", "").replace("_", "")) for f in fields)
            )
        except ValueError as exc:
            raise StoreError(f"line {lineno}: non-integer coordinate") from exc
    if len(rows) < 3:
        raise StoreError(f"only {len(rows)} vertex rows; a polygon needs >= 3")
    final_scale = scale if scale is not None else (header_scale or DEFAULT_SCALE)
    final_name = name if name is not None else (header_name or "")
    return Polygon3(tuple(rows), scale=Fraction(final_scale), name=final_name)


def write_coordinates(poly: Polygon3) -> str:
    """Canonical tab-separated rendering; parse(write(p)) == p."""
    lines = []
    if poly.name:
        lines.append(f"# name: {poly.name}")
    if poly.scale != DEFAULT_SCALE:
        lines.append(f"# scale: {_scale_text(poly.scale)}")
    for v in poly.vertices:
        lines.append("\t".join(str(c) for c in v))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# bundled fixtures


def fixtures_dir() -> Path:
    """Directory of bundled fixture files inside the installed package."""
    return Path(resources.files("stickcert") / "fixtures")  # type: ignore[arg-type]


def knots_dir() -> Path:
    """Directory holding the bundled equilateral stick-knot coordinates."""
    return fixtures_dir() / "knots"


def fixture_text(relpath: str) -> str:
    path = fixtures_dir() / relpath
    if not path.exists():
        raise StoreError(f"no bundled fixture {relpath!r}")
    return path.read_text()


def load_fixture_polygon(name: str) -> Polygon3:
    """Bundled stick-knot coordinates by name (e.g. '13n592')."""
    return parse_coordinates(fixture_text(f"knots/{name}.tsv"))


def load_fixture_diagram(relpath: str) -> Diagram:
    return parse_pd(fixture_text(relpath))


def list_fixture_polygons() -> list[str]:
    return sorted(p.stem for p in knots_dir().glob("*.tsv"))


# ---------------------------------------------------------------------------
# catalog


@dataclass(frozen=True)
class CatalogRecord:
    """One analyzed knot: coordinates, diagram, invariants, certificates."""

    name: str
    coords_text: str
    pd_text: str
    diagram_fingerprint: str
    invariant_values: tuple[tuple[str, str], ...]
    certificates: tuple[str, ...]
    created: str


def make_record(
    name: str,
    poly: Polygon3,
    diagram: Diagram,
    invariant_values: dict[str, str],
    certificates: tuple[str, ...] = (),
    created: str | None = None,
) -> CatalogRecord:
    return CatalogRecord(
        name=name,
        coords_text=write_coordinates(poly),
        pd_text=write_pd(diagram),
        diagram_fingerprint=fingerprint(diagram),
        invariant_values=tuple(sorted(invariant_values.items())),
        certificates=certificates,
        created=created or time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    )


class _CatalogLock:
    """Advisory single-writer lock via an exclusively created lock file."""

    def __init__(self, root: Path, timeout: float = 10.0):
        self.path = root / ".lock"
        self.timeout = timeout
        self.fd: int | None = None

    def __enter__(self):
        deadline = time.monotonic() + self.timeout
        while True:
            try:
                self.fd = os.open(self.path, os.O_CREAT | os.O_EXCL | os.O_WRONLY)
                return self
            except FileExistsError:
                if time.monotonic() > deadline:
                    raise StoreError(f"catalog locked: {self.path}")
                time.sleep(0.05)

    def __exit__(self, *exc):
        if self.fd is not None:
            os.close(self.fd)
        self.path.unlink(missing_ok=True)
        return False


def catalog_put(root: str | Path, record: CatalogRecord) -> Path:
    """Persist a record as canonical text files; returns the record directory."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    with _CatalogLock(root):
        rdir = root / record.name
        rdir.mkdir(exist_ok=True)
        (rdir / "coords.tsv").write_text(record.coords_text)
        lines = [
            f"name: {record.name}",
            f"created: {record.created}",
            f"fingerprint: {record.diagram_fingerprint}",
            f"certificates: {len(record.certificates)}",
        ]
        for key, value in record.invariant_values:
            lines.append(f"invariant {key}: {value}")
        lines.append("pd:")
        lines.extend("  " + ln for ln in record.pd_text.splitlines())
        (rdir / "record.txt").write_text("\n".join(lines) + "\n")
        certs = rdir / "certs"
        certs.mkdir(exist_ok=True)
        for old in certs.glob("*.txt"):
            old.unlink()
        for k, cert in enumerate(record.certificates):
            (certs / f"{k:03d}.txt").write_text(cert)
    return rdir


def catalog_get(root: str | Path, name: str) -> CatalogRecord:
    """Load a record; verifies the stored fingerprint against the PD text."""
    rdir = Path(root) / name
    record_path = rdir / "record.txt"
    if not record_path.exists():
        raise StoreError(f"no catalog record for {name!r}")
    fields: dict[str, str] = {}
    invariant_values: list[tuple[str, str]] = []
    pd_lines: list[str] = []
    in_pd = False
    for line in record_path.read_text().splitlines():
        if in_pd:
            pd_lines.append(line[2:] if line.startswith("  ") else line)
            continue
        if line == "pd:":
            in_pd = True
            continue
        key, _, value = line.partition(":")
        if key == "invariant":
            raise StoreError("malformed record: bare invariant line")
        if key.startswith("invariant "):
            invariant_values.append((key[len("invariant ") :], value.strip()))
        else:
            fields[key] = value.strip()
    pd_text = "\n".join(pd_lines) + ("\n" if pd_lines else "")
    diagram = parse_pd(pd_text)
    actual = fingerprint(diagram)
    if actual != fields.get("fingerprint"):
        raise StoreError(
            f"fingerprint mismatch for {name!r}: record corrupted "
            f"(stored {fields.get('fingerprint')!r}, computed {actual!r})"
        )
    certs_dir = rdir / "certs"
    certificates = tuple(
        p.read_text() for p in sorted(certs_dir.glob("*.txt"))
    ) if certs_dir.exists() else ()
    coords_text = (rdir / "coords.tsv").read_text()
    return CatalogRecord(
        name=fields.get("name", name),
        coords_text=coords_text,
        pd_text=pd_text,
        diagram_fingerprint=fields["fingerprint"],
        invariant_values=tuple(invariant_values),
        certificates=certificates,
        created=fields.get("created", ""),
    )
