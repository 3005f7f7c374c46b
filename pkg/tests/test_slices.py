import pytest

from algebra.bound_algebra import BoundAlgebra
from errors import ModuleNotFoundInRegistryError, PreconditionError, SearchCapExceededError
from extension.surjection import quotient_surjection
from quiver.parser import parse_quiver
from repmod.knitting import knit_ar_quiver
from slices.slices import (SliceCandidate, embed_and_verify, enumerate_complete_slices, hom_condition,
                           is_local_slice, is_presection, is_sectionally_convex, slices_to_json)

A3 = "algebra a3\nvertices 1 2 3\narrow a 1 2\narrow b 2 3\n"


def knit(text):
    doc = parse_quiver(text)
    return knit_ar_quiver(BoundAlgebra(doc.quiver, doc.relations, field=doc.field, name=doc.name))


class TestSliceAxioms:
    """Test cases for presections, sectional convexity and local slices."""

    def setup_method(self):
        """Set up test fixtures."""
        self.a3 = knit(A3)

    def test_projectives_form_local_slice(self):
        """Test the indecomposable projectives of A3 are a local slice."""
        candidate = SliceCandidate.of(self.a3, self.a3.projectives())
        report = is_local_slice(candidate)
        assert report.is_local_slice
        assert report.hom_condition is None
        assert bool(report)

    def test_presection_witness(self):
        """Test an irreducible map leaving the set without its translate is reported."""
        candidate = SliceCandidate.from_dimension_vectors(self.a3, [[0, 0, 1]])
        verdict = is_presection(candidate)
        assert not verdict
        clause, left, right = verdict.witness
        assert clause == "a"
        assert self.a3.nodes[left].dimension_vector == (0, 0, 1)
        assert self.a3.nodes[right].dimension_vector == (0, 1, 1)

    def test_convexity_witness(self):
        """Test a sectional path through a non-member between members is reported."""
        candidate = SliceCandidate.from_dimension_vectors(self.a3, [[0, 0, 1], [1, 1, 1]])
        verdict = is_sectionally_convex(candidate)
        assert not verdict
        path = [self.a3.nodes[i].dimension_vector for i in verdict.witness]
        assert path == [(0, 0, 1), (0, 1, 1), (1, 1, 1)]

    def test_cardinality(self):
        """Test a set with fewer members than vertices is not a local slice."""
        report = is_local_slice(SliceCandidate.from_dimension_vectors(self.a3, [[0, 0, 1], [0, 1, 1]]))
        assert not report.cardinality
        assert report.cardinality.witness == (2, 3)
        assert not report.is_local_slice

    def test_unknown_dimension_vector(self):
        """Test a dimension vector missing from the AR quiver."""
        with pytest.raises(ModuleNotFoundInRegistryError):
            SliceCandidate.from_dimension_vectors(self.a3, [[2, 2, 2]])

    def test_unregistered_id(self):
        """Test member ids must be registered."""
        with pytest.raises(PreconditionError):
            SliceCandidate.of(self.a3, [99])

    def test_report_json_and_dot(self):
        """Test a failing report names its witnesses by dimension vector."""
        candidate = SliceCandidate.from_dimension_vectors(self.a3, [[0, 0, 1], [1, 1, 1], [0, 1, 0]])
        report = is_local_slice(candidate)
        data = report.to_json()
        assert data["local_slice"] is False
        assert data["sectionally_convex"]["witness"] == ["0,0,1", "0,1,1", "1,1,1"]
        assert data["members"] == [[0, 0, 1], [0, 1, 0], [1, 1, 1]]
        assert report.to_dot().startswith("digraph AR {")


class TestCompleteSlices:
    """Test cases for the complete slice enumeration."""

    def test_a2_complete_slices(self, corpus):
        """Test A2 has exactly its two complete slices."""
        found = enumerate_complete_slices(corpus.ar("a2"))
        vectors = [[list(v) for v in r.candidate.dimension_vectors()] for r in found]
        assert sorted(vectors) == corpus.expected("a2")["complete_slices"]
        assert all(r.is_complete_slice for r in found)

    def test_hom_condition_fails_on_translates(self, corpus):
        """Test a set holding a module and its translate has Hom(X, tau Y) nonzero."""
        ar = corpus.ar("a2")
        candidate = SliceCandidate.from_dimension_vectors(ar, [[0, 1], [1, 0]])
        verdict = hom_condition(candidate)
        assert not verdict
        x, y = verdict.witness
        assert ar.nodes[y].tau == x

    def test_search_cap(self, corpus):
        """Test the enumeration stops once its candidate cap is passed."""
        with pytest.raises(SearchCapExceededError):
            enumerate_complete_slices(corpus.ar("a2"), cap=1)

    def test_two_zero_complete_slices(self, corpus):
        """Test every complete slice of a tilted algebra has one module per vertex."""
        found = enumerate_complete_slices(corpus.ar("two_zero_relations"))
        assert found
        for report in found:
            assert len(report.candidate) == 5
            assert report.hom_condition

    def test_slices_to_json(self, corpus):
        """Test the slices report schema."""
        ar = corpus.ar("a2")
        data = slices_to_json(ar, enumerate_complete_slices(ar))
        assert data["schema"] == "relext.slices/1"
        assert data["count"] == 2
        assert data["slices"][0]["complete_slice"] is True

    def test_marked_local_slice(self, corpus):
        """Test the marked set of e6_local is a local slice."""
        ar = corpus.ar("e6_local")
        marked = corpus.expected("e6_local")["marked_local_slice"]
        report = is_local_slice(SliceCandidate.from_dimension_vectors(ar, marked))
        assert report.is_local_slice, report.to_json()


class TestEmbedding:
    """Test cases for pulling complete slices back along surjections."""

    def test_two_zero_partial_extension(self, corpus):
        """Test complete slices of C are local slices of the partial extension keeping lambda."""
        pe = corpus.partial("two_zero_relations", ["lambda"])
        slices = enumerate_complete_slices(corpus.ar("two_zero_relations"))
        reports = embed_and_verify(slices, pe.to_base(), corpus.ar_partial("two_zero_relations", ["lambda"]),
                                   from_extended=pe.from_extended())
        assert len(reports) == len(slices)
        for report in reports:
            assert report, report.mismatches
            assert report.to_json()["local_slice"]["local_slice"] is True

    def test_gentle_partial_extension(self, corpus):
        """Test complete slices of the gentle base are local slices of the partial extension keeping gamma."""
        pe = corpus.partial("gentle_a_tilde", ["gamma"])
        slices = enumerate_complete_slices(corpus.ar("gentle_a_tilde"))
        assert slices
        ar_partial = corpus.ar_partial("gentle_a_tilde", ["gamma"])
        reports = embed_and_verify(slices, pe.to_base(), ar_partial, from_extended=pe.from_extended())
        assert len(reports) == len(slices)
        for report in reports:
            assert report.local.is_local_slice, report.to_json()
            assert len(report.image.members) == len(report.source_slice.members)

    def test_wrong_ar_quiver(self, corpus):
        """Test the surjection must start at the algebra of the AR quiver."""
        pe = corpus.partial("two_zero_relations", ["lambda"])
        slices = enumerate_complete_slices(corpus.ar("two_zero_relations"))
        with pytest.raises(PreconditionError):
            embed_and_verify(slices, pe.to_base(), corpus.ar("two_zero_relations"))

    @pytest.mark.slow
    def test_e6_chain(self, corpus):
        """Test complete slices of e6_tilted embed in the AR quiver of e6_local."""
        base, middle = corpus.algebra("e6_tilted"), corpus.algebra("e6_local")
        slices = enumerate_complete_slices(corpus.ar("e6_tilted"))
        extended = corpus.extension("e6_tilted").extended
        reports = embed_and_verify(slices, quotient_surjection(middle, base), corpus.ar("e6_local"),
                                   from_extended=quotient_surjection(extended, middle))
        assert reports
        assert all(reports)
