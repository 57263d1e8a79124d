from __future__ import annotations

import shutil
import subprocess

import pytest

from conftest import write_tree
from msdeps.errors import EmptySystemError, IngestError, RevisionError
from msdeps.ingest import DiscoveryConfig, discover_services, fetch_repository, skipped_directories


def test_discovers_manifest_directories(tmp_path):
    write_tree(tmp_path, {"svc-b/pom.xml": "", "svc-a/pom.xml": "", "docs/readme.md": ""})
    roots = discover_services(tmp_path)
    assert [r.name for r in roots] == ["svc-a", "svc-b"]
    assert [r.id.ordinal for r in roots] == [1, 2]
    assert all(r.manifest_path.parent == r.root_dir for r in roots)
    assert skipped_directories(tmp_path, roots) == ["docs"]


def test_gradle_and_nested_layout(tmp_path):
    write_tree(
        tmp_path,
        {
            "services/gw/build.gradle.kts": "",
            "services/pay/build.gradle": "",
            "web/pom.xml": "",
            "web/sub/pom.xml": "",  # nested under a service: not a separate service
            "node_modules/x/pom.xml": "",
            ".hidden/pom.xml": "",
            "target/pom.xml": "",
        },
    )
    names = [r.name for r in discover_services(tmp_path)]
    assert names == ["gw", "pay", "web"]
    assert [r.name for r in discover_services(tmp_path, DiscoveryConfig(max_depth=1))] == ["web"]


def test_custom_manifests(tmp_path):
    write_tree(tmp_path, {"a/package.json": "{}", "b/pom.xml": ""})
    assert [r.name for r in discover_services(tmp_path, DiscoveryConfig(manifests=("package.json",)))] == ["a"]


def test_empty_dir_is_empty_system(tmp_path):
    with pytest.raises(EmptySystemError):
        discover_services(tmp_path)


def test_discovery_is_deterministic(minimart):
    assert discover_services(minimart) == discover_services(minimart)
    assert all(minimart in r.root_dir.parents for r in discover_services(minimart))


def test_fetch_local_passthrough(minimart):
    fetched = fetch_repository(str(minimart))
    assert fetched.path == minimart and not fetched.temporary
    assert fetched.revision == "unversioned"


def test_fetch_missing_path(tmp_path):
    with pytest.raises(IngestError):
        fetch_repository(str(tmp_path / "nope"))


def _git(*args, cwd):
    subprocess.run(
        ["git", "-c", "user.name=t", "-c", "user.email=t@example.com", *args],
        cwd=cwd,
        check=True,
        capture_output=True,
    )


@pytest.mark.skipif(shutil.which("git") is None, reason="git not installed")
def test_fetch_revision_from_local_repo(tmp_path):
    repo = write_tree(tmp_path / "repo", {"svc-a/pom.xml": "v1"})
    _git("init", "-q", cwd=repo)
    _git("add", ".", cwd=repo)
    _git("commit", "-qm", "one", cwd=repo)
    _git("tag", "v1.0.0", cwd=repo)
    write_tree(repo, {"svc-b/pom.xml": "v2"})
    _git("add", ".", cwd=repo)
    _git("commit", "-qm", "two", cwd=repo)

    fetched = fetch_repository(str(repo), "v1.0.0")
    try:
        assert fetched.temporary and fetched.revision == "v1.0.0"
        assert [r.name for r in discover_services(fetched.path)] == ["svc-a"]
    finally:
        fetched.cleanup()
    assert not fetched.path.exists()

    with pytest.raises(RevisionError):
        fetch_repository(str(repo), "no-such-tag")
