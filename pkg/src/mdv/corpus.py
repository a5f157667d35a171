"""Fixture corpus: reference fans and GNW systems with a checksummed manifest.

``manifest.json`` lists every fixture with its format, provenance and
SHA-256 digest.  :func:`generate_fixtures` rebuilds the generated files from
the library; the non-projective fan is hand-built and carries a note.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

FIXTURE_ROOT = Path(__file__).resolve().parent / "fixtures"
MANIFEST = "manifest.json"
FORMATS = ("fan", "gnw-system")
PROVENANCE_KINDS = ("generated", "hand-built", "textbook")


def fixture_path(relative: str, root: Path | None = None) -> Path:
    return (root or FIXTURE_ROOT) / relative


def sha256_of(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _fan_fixtures():
    from . import fan

    return {
        "p2": (fan.p2_fan(), "textbook", "fan of the projective plane"),
        "p1xp1": (fan.p1xp1_fan(), "textbook", "product of two projective lines"),
        "hirzebruch2": (fan.hirzebruch_fan(2), "textbook", "Hirzebruch surface F_2"),
        "octant": (fan.octant_fan(3), "textbook", "the positive orthant of rank 3 (valid, not complete)"),
        "nonprojective": (
            fan.nonprojective_fan(),
            "hand-built",
            "complete simplicial fan on 7 rays; a triangle of small rays inside a triangle of "
            "large rays at height one, with the band between them triangulated by twisted "
            "diagonals, closed off by the ray (0,0,-1); the twist makes every wall relation "
            "force a strict cyclic inequality, so no strictly convex support function exists",
        ),
    }


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def generate_fixtures(root: Path | None = None) -> dict:
    """Write every fixture and the manifest under ``root``; returns the manifest."""
    from .gnwpoly import gnw_system

    root = root or FIXTURE_ROOT
    entries = []
    (root / "fans").mkdir(parents=True, exist_ok=True)
    (root / "gnw").mkdir(parents=True, exist_ok=True)
    for name, (f, kind, note) in _fan_fixtures().items():
        rel = f"fans/{name}.json"
        (root / rel).write_text(_dump(f.to_json()))
        entries.append({"path": rel, "format": "fan", "provenance": {"kind": kind, "note": note}})
    for m in (4, 5, 7):
        rel = f"gnw/m{m}.json"
        (root / rel).write_text(_dump(gnw_system(m).to_json()))
        entries.append({"path": rel, "format": "gnw-system",
                        "provenance": {"kind": "generated", "note": f"gnwpoly.gnw_system({m})"}})
    for e in entries:
        e["sha256"] = sha256_of(root / e["path"])
    manifest = {"fixtures": sorted(entries, key=lambda e: e["path"])}
    (root / MANIFEST).write_text(_dump(manifest))
    return manifest


@dataclass
class ManifestResult:
    checked: list = field(default_factory=list)
    problems: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.problems

    def to_json(self):
        return {"checked": self.checked, "problems": self.problems, "warnings": self.warnings,
                "passed": self.passed}


def _provenance_ok(p) -> bool:
    return (isinstance(p, dict) and p.get("kind") in PROVENANCE_KINDS
            and isinstance(p.get("note"), str) and p["note"].strip() != "")


def verify_manifest(root: Path | None = None) -> ManifestResult:
    """Checksums, formats and provenance of every listed fixture, plus orphans."""
    root = Path(root or FIXTURE_ROOT)
    result = ManifestResult()
    mpath = root / MANIFEST
    if not mpath.exists():
        result.problems.append({"file": MANIFEST, "problem": "missing"})
        return result
    try:
        entries = json.loads(mpath.read_text())["fixtures"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        result.problems.append({"file": MANIFEST, "problem": f"malformed: {exc}"})
        return result
    if not entries:
        result.warnings.append("manifest is empty")
    listed = set()
    for e in entries:
        rel = e.get("path", "?")
        listed.add(rel)
        path = root / rel
        if e.get("format") not in FORMATS:
            result.problems.append({"file": rel, "problem": f"unknown format {e.get('format')!r}"})
        if not _provenance_ok(e.get("provenance")):
            result.problems.append({"file": rel, "problem": "malformed provenance"})
        if not path.exists():
            result.problems.append({"file": rel, "problem": "missing"})
            continue
        if sha256_of(path) != e.get("sha256"):
            result.problems.append({"file": rel, "problem": "checksum mismatch"})
            continue
        result.checked.append(rel)
    for path in sorted(root.rglob("*")):
        rel = path.relative_to(root).as_posix()
        if path.is_file() and rel != MANIFEST and rel not in listed:
            result.problems.append({"file": rel, "problem": "not listed in manifest"})
    return result


def load_gnw_fixture(m: int, root: Path | None = None) -> dict:
    return json.loads(fixture_path(f"gnw/m{m}.json", root).read_text())


__all__ = [
    "FIXTURE_ROOT",
    "ManifestResult",
    "fixture_path",
    "generate_fixtures",
    "load_gnw_fixture",
    "sha256_of",
    "verify_manifest",
]
