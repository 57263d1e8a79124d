"""Acquire a codebase and locate the microservice projects inside it."""

from __future__ import annotations

import fnmatch
import logging
import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptySystemError, IngestError, RevisionError
from .model import ServiceId, make_services

logger = logging.getLogger(__name__)

DEFAULT_MANIFESTS = ("pom.xml", "build.gradle", "build.gradle.kts")
DEFAULT_EXCLUDES = (".*", "target", "build", "node_modules")


@dataclass(frozen=True)
class DiscoveryConfig:
    manifests: tuple[str, ...] = DEFAULT_MANIFESTS
    exclude_globs: tuple[str, ...] = DEFAULT_EXCLUDES
    max_depth: int = 2


@dataclass(frozen=True)
class ServiceRoot:
    id: ServiceId
    root_dir: Path
    manifest_path: Path

    @property
    def name(self) -> str:
        return self.id.name


@dataclass
class FetchedSource:
    path: Path
    revision: str = "unversioned"
    temporary: bool = False
    label: str = ""
    _tmp: str | None = field(default=None, repr=False)

    def cleanup(self) -> None:
        if self._tmp and os.path.isdir(self._tmp):
            shutil.rmtree(self._tmp, ignore_errors=True)
            self._tmp = None


def is_remote(source: str) -> bool:
    return "://" in source or source.startswith("git@")


def _git(args, cwd=None) -> subprocess.CompletedProcess:
    try:
        return subprocess.run(["git", *args], cwd=cwd, capture_output=True, text=True, check=False)
    except FileNotFoundError:
        raise IngestError("git executable not found") from None


def fetch_repository(source: str, revision: str | None = None) -> FetchedSource:
    """Return a readable checkout of ``source``.

    Local directories are used in place when no revision is requested.
    Remote URLs, and local repositories with a revision, are cloned into a
    temporary directory; call :meth:`FetchedSource.cleanup` when done.
    """
    source = str(source)
    if not is_remote(source):
        path = Path(source)
        if not path.is_dir():
            raise IngestError(f"source {source!r} is not a readable directory")
        if revision is None:
            return FetchedSource(path=path, label=source)

    tmp = tempfile.mkdtemp(prefix="msdeps-")
    checkout = Path(tmp) / "src"
    proc = _git(["clone", "--quiet", source, str(checkout)])
    if proc.returncode != 0:
        shutil.rmtree(tmp, ignore_errors=True)
        raise IngestError(f"cannot clone {source!r}: {proc.stderr.strip()}")
    fetched = FetchedSource(path=checkout, temporary=True, label=source, _tmp=tmp)
    if revision is not None:
        proc = _git(["checkout", "--quiet", revision], cwd=checkout)
        if proc.returncode != 0:
            fetched.cleanup()
            raise RevisionError(f"unknown revision {revision!r}: {proc.stderr.strip()}")
        fetched.revision = revision
    return fetched


def _excluded(name: str, globs) -> bool:
    return any(fnmatch.fnmatch(name, g) for g in globs)


def _walk(root: Path, config: DiscoveryConfig):
    """Yield ``(dir, manifest or None)`` for candidate dirs, breadth-first."""
    frontier = [root]
    for _ in range(config.max_depth):
        nxt = []
        for parent in frontier:
            try:
                children = sorted(p for p in parent.iterdir() if p.is_dir())
            except OSError as exc:
                logger.warning("cannot list %s: %s", parent, exc)
                continue
            for child in children:
                if _excluded(child.name, config.exclude_globs):
                    continue
                manifest = next((child / m for m in config.manifests if (child / m).is_file()), None)
                yield child, manifest
                if manifest is None:
                    nxt.append(child)
        frontier = nxt


def discover_services(root, config: DiscoveryConfig | None = None) -> list[ServiceRoot]:
    """Find every directory holding a build manifest, to ``config.max_depth``.

    A directory with a manifest is a service and is not searched further, so
    returned roots never nest.
    """
    config = config or DiscoveryConfig()
    root = Path(root)
    if not root.is_dir():
        raise IngestError(f"{root} is not a directory")
    found = {}
    for d, manifest in _walk(root, config):
        if manifest is not None:
            if d.name in found:
                logger.warning("duplicate service name %s at %s; keeping %s", d.name, d, found[d.name][0])
                continue
            found[d.name] = (d, manifest)
    if not found:
        raise EmptySystemError(f"no microservice projects found under {root}")
    ids = make_services(found)
    return [ServiceRoot(sid, found[sid.name][0], found[sid.name][1]) for sid in ids]


def skipped_directories(root, services, config: DiscoveryConfig | None = None) -> list[str]:
    """Top-level directories that are neither services nor contain one."""
    config = config or DiscoveryConfig()
    root = Path(root)
    service_dirs = [s.root_dir.resolve() for s in services]
    out = []
    for child in sorted(p for p in root.iterdir() if p.is_dir()):
        if _excluded(child.name, config.exclude_globs):
            continue
        c = child.resolve()
        if any(sd == c or c in sd.parents for sd in service_dirs):
            continue
        out.append(child.name)
    return out
