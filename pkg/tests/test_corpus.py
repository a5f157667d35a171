import json
import shutil

import pytest

from mdv import fan as F
from mdv.corpus import FIXTURE_ROOT, MANIFEST, generate_fixtures, sha256_of, verify_manifest
from mdv.gnwpoly import gnw_system


@pytest.fixture
def tree(tmp_path):
    root = tmp_path / "fixtures"
    shutil.copytree(FIXTURE_ROOT, root)
    return root


def problems_by_file(result):
    return {p["file"]: p["problem"] for p in result.problems}


def test_shipped_tree_is_intact():
    result = verify_manifest()
    assert result.passed, result.problems
    assert not result.warnings
    assert len(result.checked) == 8


def test_one_byte_flip_is_caught_and_named(tree):
    path = tree / "fans" / "p2.json"
    data = bytearray(path.read_bytes())
    data[len(data) // 2] ^= 1
    path.write_bytes(bytes(data))
    result = verify_manifest(tree)
    assert not result.passed
    assert problems_by_file(result) == {"fans/p2.json": "checksum mismatch"}


def test_empty_manifest_passes_with_warning(tmp_path):
    (tmp_path / MANIFEST).write_text(json.dumps({"fixtures": []}))
    result = verify_manifest(tmp_path)
    assert result.passed
    assert result.warnings == ["manifest is empty"]


def test_orphan_and_missing_files(tree):
    (tree / "fans" / "extra.json").write_text("{}")
    (tree / "gnw" / "m5.json").unlink()
    found = problems_by_file(verify_manifest(tree))
    assert found == {"fans/extra.json": "not listed in manifest", "gnw/m5.json": "missing"}


def test_missing_and_malformed_manifest(tree):
    (tree / MANIFEST).write_text("{oops")
    assert problems_by_file(verify_manifest(tree))[MANIFEST].startswith("malformed")
    (tree / MANIFEST).unlink()
    assert problems_by_file(verify_manifest(tree)) == {MANIFEST: "missing"}


def test_bad_format_and_provenance(tree):
    manifest = json.loads((tree / MANIFEST).read_text())
    manifest["fixtures"][0]["format"] = "spreadsheet"
    manifest["fixtures"][1]["provenance"] = {"kind": "rumour", "note": "x"}
    (tree / MANIFEST).write_text(json.dumps(manifest))
    found = problems_by_file(verify_manifest(tree))
    assert "unknown format" in found[manifest["fixtures"][0]["path"]]
    assert found[manifest["fixtures"][1]["path"]] == "malformed provenance"


def test_regenerated_fixtures_are_byte_identical(tmp_path):
    manifest = generate_fixtures(tmp_path)
    for entry in manifest["fixtures"]:
        shipped = FIXTURE_ROOT / entry["path"]
        assert (tmp_path / entry["path"]).read_bytes() == shipped.read_bytes(), entry["path"]
        assert entry["sha256"] == sha256_of(shipped)
    assert (tmp_path / MANIFEST).read_bytes() == (FIXTURE_ROOT / MANIFEST).read_bytes()


def test_fixture_contents_match_library():
    for name, maker in F.STANDARD_FANS.items():
        loaded = F.load_fan(FIXTURE_ROOT / "fans" / f"{name}.json")
        expected = maker()
        assert loaded.rays == expected.rays and loaded.max_cones == expected.max_cones
    for m in (4, 5, 7):
        data = json.loads((FIXTURE_ROOT / "gnw" / f"m{m}.json").read_text())
        assert data == gnw_system(m).to_json()
