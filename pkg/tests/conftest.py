"""Shared fixtures: corpus algebras, their relation extensions and AR quivers."""

import pytest

from corpus.corpus_handler import CorpusHandler
from extension.partial_extension import build_partial_extension
from extension.relation_extension import build_relation_extension
from repmod.knitting import knit_ar_quiver


class CorpusCache:
    """Builds each corpus object once per test session."""

    def __init__(self):
        self.handler = CorpusHandler()
        self._cache = {}

    def _get(self, key, factory):
        if key not in self._cache:
            self._cache[key] = factory()
        return self._cache[key]

    def expected(self, name):
        return self.handler.entry(name).expected

    def document(self, name):
        return self._get(("doc", name), lambda: self.handler.entry(name).load())

    def algebra(self, name):
        return self._get(("algebra", name), lambda: self.handler.entry(name).algebra())

    def extension(self, name):
        def build():
            doc = self.document(name)
            return build_relation_extension(self.algebra(name), doc.new_arrow_names or None)
        return self._get(("extension", name), build)

    def partial(self, name, keep):
        key = ("partial", name, tuple(keep))
        return self._get(key, lambda: build_partial_extension(self.extension(name), keep))

    def ar(self, name):
        return self._get(("ar", name), lambda: knit_ar_quiver(self.algebra(name)))

    def ar_extended(self, name):
        return self._get(("ar~", name), lambda: knit_ar_quiver(self.extension(name).extended))

    def ar_partial(self, name, keep):
        key = ("ar-partial", name, tuple(keep))
        return self._get(key, lambda: knit_ar_quiver(self.partial(name, keep).algebra))

    def knitted(self):
        """Every AR quiver the corpus knits, labelled by algebra and chain step."""
        return [
            ("a2", self.ar("a2")),
            ("two_zero_relations", self.ar("two_zero_relations")),
            ("two_zero_relations[lambda]", self.ar_partial("two_zero_relations", ["lambda"])),
            ("two_zero_relations~", self.ar_extended("two_zero_relations")),
            ("gentle_a_tilde[gamma]", self.ar_partial("gentle_a_tilde", ["gamma"])),
            ("e6_tilted", self.ar("e6_tilted")),
            ("e6_local", self.ar("e6_local")),
        ]


@pytest.fixture(scope="session")
def corpus():
    return CorpusCache()
