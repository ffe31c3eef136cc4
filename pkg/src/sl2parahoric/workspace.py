"""Per-prime cache of enumerated groups and their character tables."""

from __future__ import annotations

import os
import threading
from pathlib import Path

from .chartab import CharacterTable, character_table
from .errors import TableError
from .groups import DEFAULT_MAX_ELEMENTS, GroupModel, Kind, enumerate_group

CACHE_ENV = "SL2PARAHORIC_CACHE"
DEFAULT_MAX_WORDS = 2_000_000


def code_version() -> str:
    from . import __version__
    from .chartab import TABLE_FORMAT_VERSION
    return f"{__version__}+t{TABLE_FORMAT_VERSION}"


class Workspace:
    """Groups and tables for one prime, built lazily and shared by all computations.

    Tables are written to ``cache_dir`` (if given) and reloaded when the
    header and code version match.
    """

    def __init__(self, p: int, cache_dir: str | os.PathLike | None = None,
                 max_elements: int = DEFAULT_MAX_ELEMENTS, max_words: int = DEFAULT_MAX_WORDS):
        self.p = p
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.max_elements = max_elements
        self.max_words = max_words
        self._groups: dict[tuple, GroupModel] = {}
        self._tables: dict[tuple, CharacterTable] = {}
        self._lock = threading.RLock()
        self.table_hits = 0
        self.table_builds = 0

    def group(self, N: int, kind: Kind | str, cond: int = 0) -> GroupModel:
        key = (N, Kind(kind), cond)
        with self._lock:
            if key not in self._groups:
                self._groups[key] = enumerate_group(self.p, N, kind, cond, self.max_elements)
            return self._groups[key]

    # named shortcuts
    def K(self, N: int) -> GroupModel:
        return self.group(N, Kind.FULL)

    def J(self, N: int) -> GroupModel:
        return self.group(N, Kind.IWAHORI_UPPER)

    def Jlower(self, N: int) -> GroupModel:
        return self.group(N, Kind.IWAHORI_LOWER)

    def U(self, N: int) -> GroupModel:
        return self.group(N, Kind.UNIP_UPPER)

    def Ubar(self, N: int) -> GroupModel:
        return self.group(N, Kind.UNIP_LOWER)

    def L(self, N: int) -> GroupModel:
        return self.group(N, Kind.DIAGONAL)

    def Jc(self, N: int, c: int) -> GroupModel:
        return self.group(N, Kind.CONGRUENCE, c)

    def _cache_path(self, G: GroupModel) -> Path | None:
        if self.cache_dir is None:
            return None
        return self.cache_dir / f"table_p{G.p}_N{G.N}_{G.tag}.json"

    def table(self, G: GroupModel) -> CharacterTable:
        key = (G.N, G.kind, G.cond)
        with self._lock:
            if key in self._tables:
                return self._tables[key]
            path = self._cache_path(G)
            table = None
            if path is not None and path.exists():
                try:
                    text = path.read_text()
                    if f'"code_version":"{code_version()}"' in text:
                        table = CharacterTable.from_json(G, text)
                        self.table_hits += 1
                except (TableError, ValueError, KeyError):
                    table = None
            if table is None:
                table = character_table(G)
                self.table_builds += 1
                if path is not None:
                    path.parent.mkdir(parents=True, exist_ok=True)
                    tmp = path.with_suffix(".tmp")
                    tmp.write_text(table.to_json(code_version()))
                    tmp.replace(path)
            self._tables[key] = table
            return table


_shared: dict[tuple, Workspace] = {}


def shared_workspace(p: int, cache_dir=None) -> Workspace:
    """Process-wide workspace per (p, cache_dir); used by tests and scripts."""
    key = (p, str(cache_dir) if cache_dir else None)
    if key not in _shared:
        _shared[key] = Workspace(p, cache_dir)
    return _shared[key]
