import logging
from unittest.mock import patch

import numpy as np
import pytest

from algebra.bound_algebra import BoundAlgebra
from errors import (BimoduleClosureError, GlobalDimensionExceededError, IncompatibleMapError, KeepNotAlignedError,
                    NotInBimoduleError, NotTriangularError, PreconditionError)
from exactlin.subspace import Subspace
from extension.bimodule import (Bimodule, check_split, induced_bimodule_decomposition, is_direct_summand,
                                partial_bimodule_of, structural_and_homological_dims, subbimodule_generated, whole)
from extension.converse import (Obstruction, PotentialSplit, is_cyclically_oriented_extension,
                                potential_split_from_bimodule, projective_injective_split)
from extension.partial_extension import build_partial_extension, check_trivial_extension_transitivity
from extension.relation_extension import build_relation_extension
from extension.surjection import AlgebraSurjection, check_surjection, quotient_surjection
from potential.potential import coarsenings, dependency_components
from quiver.parser import parse_element, parse_quiver
from repmod.resolution import ext2_dc_c


def algebra_of(text):
    doc = parse_quiver(text)
    return BoundAlgebra(doc.quiver, doc.relations, field=doc.field, name=doc.name)


def span_of(extension, texts):
    vectors = [extension.e_coordinates(parse_element(extension.quiver, t)) for t in texts]
    return Bimodule(extension, Subspace(extension.e_dim, vectors))


class TestRelationExtension:
    """Test cases for relation extensions and their potentials."""

    def test_two_zero_relations(self, corpus):
        """Test new arrows, potential and dimensions of the two zero relations example."""
        extension = corpus.extension("two_zero_relations")
        expected = corpus.expected("two_zero_relations")
        assert [(a.name, a.source, a.target) for a in extension.new_arrows] == [("lambda", "1", "4"),
                                                                               ("mu", "2", "5")]
        assert extension.potential.to_text() == "alpha*beta*lambda + delta*mu*gamma"
        assert extension.e_dim == expected["dim_E"]
        assert extension.extended.dim == expected["dim_extended"]
        assert [str(p) for p in extension.e_basis] == ["lambda", "mu"]
        assert all(extension.check_invariants().values())

    def test_relations_of_extension(self, corpus):
        """Test the cyclic derivatives vanish in the relation extension."""
        extension = corpus.extension("two_zero_relations")
        for names in (("lambda", "alpha"), ("beta", "lambda"), ("alpha", "beta"), ("mu", "gamma")):
            assert extension.word(*names).is_zero()
        assert not extension.word("alpha", "delta").is_zero()

    def test_dimension_is_base_plus_bimodule(self, corpus):
        """Test dim C~ = dim C + dim E and every basis path has degree at most one."""
        for name in ("two_zero_relations", "kite", "gentle_a_tilde", "e6_tilted"):
            extension = corpus.extension(name)
            assert extension.extended.dim == extension.base.dim + extension.e_dim
            assert all(extension.degree(p) <= 1 for p in extension.extended.basis)

    def test_gentle_bimodule_basis(self, corpus):
        """Test the E basis of the gentle example."""
        extension = corpus.extension("gentle_a_tilde")
        expected = corpus.expected("gentle_a_tilde")
        assert extension.e_dim == expected["dim_E"]
        assert extension.extended.dim == expected["dim_extended"]
        assert {str(p) for p in extension.e_basis} == set(expected["E_first"]) | set(expected["E_second"])

    def test_default_new_arrow_names(self, corpus):
        """Test new arrows are numbered when no names are given."""
        extension = build_relation_extension(corpus.algebra("two_zero_relations"))
        assert extension.new_arrow_names == ["new1", "new2"]

    def test_wrong_number_of_names(self, corpus):
        """Test the names must match the minimal relations one to one."""
        with pytest.raises(PreconditionError):
            build_relation_extension(corpus.algebra("two_zero_relations"), ["lambda"])

    def test_not_triangular(self):
        """Test an oriented cycle is refused."""
        algebra = algebra_of("vertices 1 2\narrow a 1 2\narrow b 2 1\nrelation a*b\nrelation b*a\n")
        with pytest.raises(NotTriangularError):
            build_relation_extension(algebra)

    def test_global_dimension_exceeded(self):
        """Test a linear quiver with all quadratic zero relations has gldim four."""
        algebra = algebra_of("vertices 1 2 3 4 5\narrow a 1 2\narrow b 2 3\narrow c 3 4\narrow d 4 5\n"
                             "relation a*b\nrelation b*c\nrelation c*d\n")
        with pytest.raises(GlobalDimensionExceededError):
            build_relation_extension(algebra)

    def test_to_json(self, corpus):
        """Test the extension report."""
        report = corpus.extension("two_zero_relations").to_json()
        assert report["schema"] == "relext.extension/1"
        assert report["new_arrows"][0] == ["lambda", "1", "4", "alpha*beta"]
        assert report["E_graded"] == [["1", "4", 1], ["2", "5", 1]]


class TestArbitration:
    """Test cases for the structural and homological computation of dim E."""

    def test_ext2_dc_c(self, corpus):
        """Test the nonzero entries of Ext^2(DC, C)."""
        table = ext2_dc_c(corpus.algebra("two_zero_relations"))
        nonzero = sorted([x, y, d] for (x, y), d in table.items() if d)
        assert nonzero == corpus.expected("two_zero_relations")["ext2_dc_c"]

    def test_two_zero_agrees(self, corpus):
        """Test both computations agree without a stated value."""
        report = structural_and_homological_dims(corpus.extension("two_zero_relations"))
        assert report["structural_dim"] == report["homological_dim"] == 2
        assert report["graded_agree"]
        assert report["stated_agrees"]
        assert report["gldim_le_2"]

    def test_kite_stated_value_contradicted(self, corpus, caplog):
        """Test the stated dimension of the kite is logged as a discrepancy."""
        expected = corpus.expected("kite")
        with caplog.at_level(logging.WARNING, logger="extension.bimodule"):
            report = structural_and_homological_dims(corpus.extension("kite"), stated=expected["stated_dim_E"])
        assert report["structural_dim"] == expected["dim_E"]
        assert report["homological_dim"] == expected["dim_E"]
        assert report["graded_agree"]
        assert not report["stated_agrees"]
        assert "stated dim E = 2" in caplog.text


class TestBimodule:
    """Test cases for subbimodules of E."""

    def test_generated_by_sum_of_new_arrows(self, corpus):
        """Test u + v generates a seven dimensional bimodule without a complement."""
        extension = corpus.extension("kite")
        expected = corpus.expected("kite")
        generated = subbimodule_generated(extension, [parse_element(extension.quiver, "u + v")])
        assert generated.dim == expected["generated_dim"]
        assert bool(is_direct_summand(extension, generated)) is expected["generated_is_summand"]

    def test_partial_bimodules_split(self, corpus):
        """Test the bimodules of u and of v are complementary summands."""
        extension = corpus.extension("kite")
        first = subbimodule_generated(extension, [extension.extended.arrow("u")])
        second = subbimodule_generated(extension, [extension.extended.arrow("v")])
        assert first.dim == second.dim == 4
        assert check_split(first, second).is_direct
        report = is_direct_summand(extension, first)
        assert report
        assert report.complement.dim == 4

    def test_whole_is_summand(self, corpus):
        """Test E is a summand of itself with zero complement."""
        extension = corpus.extension("kite")
        report = is_direct_summand(extension, whole(extension))
        assert report.complement.dim == 0

    def test_closure_checked(self, corpus):
        """Test a subspace not closed under the action is refused."""
        extension = corpus.extension("kite")
        u = extension.e_coordinates(extension.extended.arrow("u"))
        with pytest.raises(BimoduleClosureError):
            Bimodule(extension, Subspace(extension.e_dim, [u], extension.extended.field))

    def test_generator_outside_bimodule(self, corpus):
        """Test old arrows are not elements of E."""
        extension = corpus.extension("kite")
        with pytest.raises(NotInBimoduleError):
            extension.e_coordinates(extension.extended.arrow("alpha"))

    def test_induced_decomposition(self, corpus):
        """Test the components of W induce the two halves of E on the gentle example."""
        extension = corpus.extension("gentle_a_tilde")
        expected = corpus.expected("gentle_a_tilde")
        w1, w2 = dependency_components(extension.potential).summands
        split = induced_bimodule_decomposition(extension, w1, w2)
        assert split.is_direct
        assert {e.to_text() for e in split.first.elements()} == set(expected["E_first"])
        assert {e.to_text() for e in split.second.elements()} == set(expected["E_second"])

    def test_induced_decomposition_requires_direct_split(self, corpus):
        """Test a non-direct potential split is refused."""
        extension = corpus.extension("gentle_a_tilde")
        w = extension.potential
        with pytest.raises(PreconditionError):
            induced_bimodule_decomposition(extension, w, w)

    def test_graded_pieces(self, corpus):
        """Test graded and top dimensions of a partial bimodule."""
        extension = corpus.extension("gentle_a_tilde")
        first = partial_bimodule_of(extension, dependency_components(extension.potential).summands[0])
        assert first.graded_dims() == {("1", "4"): 1, ("1", "3"): 1, ("3", "4"): 1, ("3", "3"): 1}
        assert first.top_graded_dims() == {("1", "4"): 1}


class TestConverse:
    """Test cases for recovering potential splits and projective-injective splits."""

    def test_potential_split_recovered(self, corpus):
        """Test the kite bimodule split comes from the two cycles of W."""
        extension = corpus.extension("kite")
        first = subbimodule_generated(extension, [extension.extended.arrow("u")])
        second = subbimodule_generated(extension, [extension.extended.arrow("v")])
        split = potential_split_from_bimodule(extension, first, second)
        assert isinstance(split, PotentialSplit)
        assert split.first.to_text() == "alpha*beta*u"
        assert split.first + split.second == extension.potential

    def test_potential_split_requires_direct_split(self, corpus):
        """Test overlapping bimodules are refused."""
        extension = corpus.extension("kite")
        generated = subbimodule_generated(extension, [parse_element(extension.quiver, "u + v")])
        second = subbimodule_generated(extension, [extension.extended.arrow("v")])
        with pytest.raises(PreconditionError):
            potential_split_from_bimodule(extension, generated, second)

    def test_gentle_potential_split_recovered(self, corpus):
        """Test the two halves of E on the gentle example recover W' and W''."""
        extension = corpus.extension("gentle_a_tilde")
        expected = corpus.expected("gentle_a_tilde")
        first, second = (span_of(extension, expected[key]) for key in ("E_first", "E_second"))
        split = potential_split_from_bimodule(extension, first, second)
        assert isinstance(split, PotentialSplit)
        assert split.first.to_text() == "alpha*beta*gamma"
        assert split.second.to_text() == "lambda*mu*nu"
        assert split.first + split.second == extension.potential

    def test_diagonal_summand_refused(self, corpus):
        """Test diagonal lines of the two dimensional E are not subbimodules."""
        extension = corpus.extension("two_zero_relations")
        lam, mu = (extension.e_coordinates(extension.extended.arrow(a)) for a in ("lambda", "mu"))
        for c in (1, -1, 2):
            line = Subspace(extension.e_dim, [tuple(x + c * y for x, y in zip(lam, mu))])
            with pytest.raises(BimoduleClosureError):
                Bimodule(extension, line)

    def test_obstruction_when_arrow_class_is_split(self, corpus, caplog):
        """Test a new arrow whose class lies in neither summand gives an obstruction."""
        extension = corpus.extension("two_zero_relations")
        first = subbimodule_generated(extension, [extension.extended.arrow("lambda")])
        second = subbimodule_generated(extension, [extension.extended.arrow("mu")])
        with patch.object(Bimodule, "contains", return_value=False):
            with caplog.at_level(logging.WARNING, logger="extension.converse"):
                result = potential_split_from_bimodule(extension, first, second)
        assert isinstance(result, Obstruction)
        assert result.arrow == "lambda"
        assert "neither summand" in caplog.text

    @patch("extension.converse.is_direct_decomposition", return_value=False)
    def test_obstruction_when_assignment_breaks_dependency(self, mock_direct, corpus):
        """Test an arrow assignment that cuts a dependency class gives an obstruction."""
        extension = corpus.extension("two_zero_relations")
        first = subbimodule_generated(extension, [extension.extended.arrow("lambda")])
        second = subbimodule_generated(extension, [extension.extended.arrow("mu")])
        result = potential_split_from_bimodule(extension, first, second)
        assert isinstance(result, Obstruction)
        assert result.arrow is None
        assert "dependency class" in result.reason
        mock_direct.assert_called_once()

    def test_obstruction_when_partial_bimodules_differ(self, corpus):
        """Test a recovered split inducing other summands gives an obstruction."""
        extension = corpus.extension("two_zero_relations")
        first = subbimodule_generated(extension, [extension.extended.arrow("lambda")])
        second = subbimodule_generated(extension, [extension.extended.arrow("mu")])
        with patch("extension.converse.partial_bimodule_of", return_value=whole(extension)):
            result = potential_split_from_bimodule(extension, first, second)
        assert isinstance(result, Obstruction)
        assert "partial bimodules" in result.reason

    def test_projective_injective_split(self, corpus):
        """Test the two zero relations example splits its projectives and injectives."""
        extension = corpus.extension("two_zero_relations")
        w1, w2 = dependency_components(extension.potential).summands
        split = induced_bimodule_decomposition(extension, w1, w2)
        result = projective_injective_split(extension, split.first, split.second)
        assert result
        assert result.projectives == (["1", "3", "4", "5"], ["2"])
        assert result.injectives == (["1", "2", "3", "4"], ["5"])

    def test_projective_injective_split_witness(self, corpus):
        """Test the gentle example has a graded piece shared by both summands."""
        extension = corpus.extension("gentle_a_tilde")
        w1, w2 = dependency_components(extension.potential).summands
        split = induced_bimodule_decomposition(extension, w1, w2)
        result = projective_injective_split(extension, split.first, split.second)
        assert not result
        assert list(result.witness) == corpus.expected("gentle_a_tilde")["split_witness"]

    def test_cyclically_oriented(self, corpus):
        """Test chordless cycles of the extended quivers."""
        assert is_cyclically_oriented_extension(corpus.extension("two_zero_relations"))
        assert not is_cyclically_oriented_extension(corpus.extension("kite"))


class TestPartialExtension:
    """Test cases for partial relation extensions."""

    def test_two_zero_keep_lambda(self, corpus):
        """Test the partial extension keeping lambda."""
        expected = corpus.expected("two_zero_relations")
        pe = corpus.partial("two_zero_relations", ["lambda"])
        assert pe.algebra.name == "two_zero_relations[lambda]"
        assert pe.dropped == ("mu",)
        assert pe.algebra.dim == expected["dim"] + 1
        assert pe.dimension_ok()
        texts = {r.element.to_text() for r in pe.algebra.minimal_relation_system()}
        assert texts == set(expected["partial_relations"])

    def test_gentle_keep_gamma(self, corpus):
        """Test the partial extension of the gentle example keeping gamma."""
        expected = corpus.expected("gentle_a_tilde")
        pe = corpus.partial("gentle_a_tilde", ["gamma"])
        assert pe.algebra.dim == expected["dim_partial"]
        reference = algebra_of("vertices 1 2 3 4\narrow alpha 4 2\narrow beta 2 1\narrow lambda 4 3\n"
                               "arrow mu 3 1\narrow gamma 1 4\n" +
                               "".join(f"relation {r}\n" for r in expected["partial_relations"]))
        assert pe.algebra.ideal_equals(reference)

    def test_extreme_keeps(self, corpus):
        """Test keeping nothing gives C and keeping everything gives C~."""
        extension = corpus.extension("two_zero_relations")
        assert build_partial_extension(extension, []).algebra.ideal_equals(extension.base)
        assert build_partial_extension(extension, ["lambda", "mu"]).algebra.dim == extension.extended.dim

    def test_keep_must_be_aligned(self, corpus):
        """Test keeping one new arrow of a dependency class is refused."""
        extension = corpus.extension("e6_tilted")
        with pytest.raises(KeepNotAlignedError):
            build_partial_extension(extension, ["delta"])

    def test_refused_keep_recorded(self, corpus):
        """Test the manifest records the keep of e6_tilted that no partial extension realizes."""
        refused = corpus.handler.entry("e6_tilted").options["refused_keep"]
        assert refused["keep"] == ["delta"]
        assert "epsilon" in refused["reason"]
        extension = corpus.extension("e6_tilted")
        assert len(dependency_components(extension.potential)) == 1
        with pytest.raises(KeepNotAlignedError):
            build_partial_extension(extension, refused["keep"])
        assert build_partial_extension(extension, ["delta", "epsilon"]).algebra.dim == extension.extended.dim

    def test_unknown_keep(self, corpus):
        """Test old arrows cannot be kept."""
        with pytest.raises(PreconditionError):
            build_partial_extension(corpus.extension("two_zero_relations"), ["alpha"])

    def test_surjections(self, corpus):
        """Test C~ -> B -> C are surjections whose composite kills every new arrow."""
        pe = corpus.partial("two_zero_relations", ["lambda"])
        first, second = pe.from_extended(), pe.to_base()
        assert first.is_valid() and second.is_valid()
        assert first.killed() == ["mu"]
        assert second.killed() == ["lambda"]
        assert sorted(first.then(second).killed()) == ["lambda", "mu"]

    def test_transitivity(self, corpus):
        """Test C~ is the trivial extension of B by the dropped bimodule."""
        for name, keep in (("two_zero_relations", ["lambda"]), ("gentle_a_tilde", ["gamma"])):
            extension = corpus.extension(name)
            report = check_trivial_extension_transitivity(extension, corpus.partial(name, keep))
            assert report, report.failures[:3]
            assert report.dimension_ok

    def test_to_json(self, corpus):
        """Test the partial extension report."""
        report = corpus.partial("two_zero_relations", ["lambda"]).to_json()
        assert report["schema"] == "relext.partial/1"
        assert report["keep"] == ["lambda"]
        assert report["dim"] == 12
        assert report["dimension_ok"]


class TestSurjection:
    """Test cases for algebra surjections."""

    def test_invalid_endpoint(self, corpus):
        """Test an arrow mapped to an arrow with other endpoints."""
        algebra = corpus.algebra("two_zero_relations")
        with pytest.raises(IncompatibleMapError):
            check_surjection(algebra, algebra, {"alpha": "beta", "beta": "beta", "gamma": "gamma", "delta": "delta"})

    def test_not_onto(self, corpus):
        """Test the identity arrow map from C to C~ is not onto."""
        extension = corpus.extension("two_zero_relations")
        surjection = AlgebraSurjection(extension.base, extension.extended,
                                       {a.name: a.name for a in extension.base.quiver.arrows})
        assert not surjection.is_valid()

    def test_quotient_by_name(self, corpus):
        """Test the quotient surjection C~ -> C kills the new arrows."""
        extension = corpus.extension("two_zero_relations")
        surjection = quotient_surjection(extension.extended, extension.base)
        assert surjection.killed() == ["lambda", "mu"]
        assert surjection.apply(extension.extended.arrow("lambda")).is_zero()
        assert surjection.is_valid()


def random_monomial_algebra(rng, index):
    """Zero relations of length two through a few middle vertices; no path has length three."""
    vertices, arrows, relations = [], [], []
    for m in range(int(rng.integers(1, 4))):
        middle = f"m{m}"
        vertices.append(middle)
        ins, outs = [], []
        for i in range(int(rng.integers(1, 3))):
            vertices.append(f"s{m}{i}")
            arrows.append(f"arrow a{m}{i} s{m}{i} {middle}")
            ins.append(f"a{m}{i}")
        for j in range(int(rng.integers(1, 3))):
            vertices.append(f"t{m}{j}")
            arrows.append(f"arrow b{m}{j} {middle} t{m}{j}")
            outs.append(f"b{m}{j}")
        pairs = [(a, b) for a in ins for b in outs]
        count = int(rng.integers(1, min(2, len(pairs)) + 1))
        for k in rng.permutation(len(pairs))[:count]:
            relations.append("relation {}*{}".format(*pairs[int(k)]))
    lines = [f"algebra random{index}", "vertices " + " ".join(vertices)] + arrows + relations
    return algebra_of("\n".join(lines) + "\n")


class TestSplitCorrespondence:
    """Test direct splits of W against partial extensions and bimodule summands."""

    def assert_split_corresponds(self, extension, w1, w2):
        keep = sorted(w1.arrows() & set(extension.new_arrow_names))
        pe = build_partial_extension(extension, keep)
        assert pe.kept_potential == w1
        assert pe.kept_bimodule == partial_bimodule_of(extension, w1)
        assert pe.dropped_bimodule == partial_bimodule_of(extension, w2)
        assert pe.dimension_ok()
        split = induced_bimodule_decomposition(extension, w1, w2)
        assert split.is_direct
        report = is_direct_summand(extension, split.first)
        assert report.is_summand
        assert report.complement.dim == extension.e_dim - split.first.dim

    def test_corpus_coarsenings(self, corpus):
        """Test every coarsening of every corpus potential gives a partial extension and a summand."""
        checked = 0
        for name in ("two_zero_relations", "kite", "gentle_a_tilde", "e6_tilted"):
            extension = corpus.extension(name)
            for w1, w2 in coarsenings(dependency_components(extension.potential)):
                self.assert_split_corresponds(extension, w1, w2)
                checked += 1
        assert checked == 7

    def test_random_coarsenings(self):
        """Test the correspondence on at least 100 splits of seeded random monomial algebras."""
        rng = np.random.default_rng(20240611)
        checked, index = 0, 0
        while checked < 100:
            extension = build_relation_extension(random_monomial_algebra(rng, index))
            for w1, w2 in coarsenings(dependency_components(extension.potential)):
                self.assert_split_corresponds(extension, w1, w2)
                checked += 1
            index += 1
