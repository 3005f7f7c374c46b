"""
Corpus Handler

Loads the corpus manifest (data/corpus.json), resolves the bound quiver
files it lists and regenerates the report artifacts of every entry.
"""

import json
import logging
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Any, Dict, List, Optional

from algebra.bound_algebra import BoundAlgebra
from config import DEFAULT_LENGTH_CAP
from errors import CorpusError, ParseError
from quiver.parser import QuiverFile, load_quiver_file

logger = logging.getLogger(__name__)


@dataclass
class CorpusEntry:
    """One input file with its provenance and hand-transcribed expected values."""

    name: str
    path: Path
    provenance: str
    reports: List[str] = dc_field(default_factory=list)
    expected: Dict[str, Any] = dc_field(default_factory=dict)
    options: Dict[str, Any] = dc_field(default_factory=dict)

    def load(self) -> QuiverFile:
        return load_quiver_file(str(self.path))

    def algebra(self, length_cap: int = DEFAULT_LENGTH_CAP) -> BoundAlgebra:
        return algebra_from_document(self.load(), length_cap=length_cap)


def algebra_from_document(doc: QuiverFile, length_cap: int = DEFAULT_LENGTH_CAP) -> BoundAlgebra:
    """Bound quiver algebra of a parsed document."""
    return BoundAlgebra(doc.quiver, doc.relations, field=doc.field, name=doc.name, length_cap=length_cap)


class CorpusHandler:
    """Access to the corpus manifest."""

    def __init__(self, corpus_file: Optional[str] = None):
        """
        Initialize corpus handler.

        Args:
            corpus_file: Path to the manifest. If None, uses data/corpus.json.

        Raises:
            CorpusError: If the manifest is missing or malformed
        """
        if corpus_file is None:
            corpus_file = str(Path(__file__).parent.parent / "data" / "corpus.json")
        self.corpus_file = Path(corpus_file)
        self.corpus_data = self._load_corpus_data()

    def _load_corpus_data(self) -> Dict[str, Any]:
        try:
            with open(self.corpus_file, 'r', encoding='utf-8') as f:
                data = json.load(f)
        except OSError as e:
            raise CorpusError(f"cannot read corpus manifest {self.corpus_file}: {e}")
        except json.JSONDecodeError as e:
            raise CorpusError(f"corpus manifest {self.corpus_file} is not valid JSON: {e}")
        if not isinstance(data.get("entries"), dict):
            raise CorpusError(f"corpus manifest {self.corpus_file} has no 'entries' table")
        return data

    def names(self) -> List[str]:
        return sorted(self.corpus_data["entries"])

    def entry(self, name: str) -> CorpusEntry:
        """
        Look up an entry by name.

        Raises:
            CorpusError: If the name is unknown or its file is missing
        """
        raw = self.corpus_data["entries"].get(name)
        if raw is None:
            raise CorpusError(f"unknown corpus entry {name!r}; known: {', '.join(self.names())}")
        path = self.corpus_file.parent / raw["file"]
        if not path.exists():
            raise CorpusError(f"corpus file {path} for {name!r} is missing")
        options = {k: v for k, v in raw.items() if k not in ("file", "provenance", "reports", "expected")}
        return CorpusEntry(name=name, path=path, provenance=raw.get("provenance", ""),
                           reports=list(raw.get("reports", [])), expected=dict(raw.get("expected", {})),
                           options=options)

    def entries(self) -> List[CorpusEntry]:
        return [self.entry(name) for name in self.names()]

    def list_table(self) -> List[Dict[str, str]]:
        rows = []
        for e in self.entries():
            rows.append({"name": e.name, "file": e.path.name, "reports": " ".join(e.reports),
                         "provenance": e.provenance})
        return rows

    def validate(self) -> List[str]:
        """Names of entries whose file does not parse."""
        broken = []
        for name in self.names():
            try:
                self.entry(name).load()
            except (CorpusError, ParseError, OSError) as e:
                logger.error(f"corpus entry {name} is broken: {e}")
                broken.append(name)
        return broken
