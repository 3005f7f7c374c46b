import pytest

from errors import CompositionError, ParseError, QuiverError, RelationShapeError
from exactlin.field import QQ
from quiver.parser import parse_element, parse_quiver, serialize_quiver
from quiver.path import Cycle, Path, canonical_rotation
from quiver.quiver import Arrow, Quiver, chordless_cycles, enumerate_paths

TWO_ZERO = """\
algebra two_zero_relations
field Q
vertices 1 2 3 4 5
arrow alpha 4 3
arrow beta 3 1
arrow gamma 5 3
arrow delta 3 2
relation alpha*beta
relation gamma*delta
new_arrows lambda mu
"""


class TestQuiver:
    """Test cases for quivers and paths."""

    def setup_method(self):
        """Set up test fixtures."""
        self.doc = parse_quiver(TWO_ZERO)
        self.quiver = self.doc.quiver

    def test_paths_compose_left_to_right(self):
        """Test alpha*beta runs from the source of alpha to the target of beta."""
        path = Path.from_arrows(self.quiver, ["alpha", "beta"])
        assert (path.source, path.target) == ("4", "1")
        assert str(path) == "alpha*beta"
        assert str(Path.trivial("3")) == "e_3"

    def test_non_composable_path(self):
        """Test beta*alpha does not compose."""
        with pytest.raises(CompositionError):
            Path.from_arrows(self.quiver, ["beta", "alpha"])

    def test_enumerate_paths_length_lex(self):
        """Test paths of length two come in declaration order."""
        paths = [str(p) for p in enumerate_paths(self.quiver, 2)]
        assert paths == ["alpha*beta", "alpha*delta", "gamma*beta", "gamma*delta"]
        assert len(enumerate_paths(self.quiver, 0)) == 5
        assert enumerate_paths(self.quiver, 3) == []

    def test_acyclic_and_opposite(self):
        """Test the opposite quiver reverses every arrow."""
        assert self.quiver.is_acyclic()
        opposite = self.quiver.opposite()
        assert opposite.arrow("alpha").source == "3"
        assert opposite.arrow("alpha").target == "4"

    def test_duplicate_arrow_refused(self):
        """Test duplicate arrow names raise QuiverError."""
        with pytest.raises(QuiverError):
            Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("a", "2", "1")])

    def test_canonical_rotation(self):
        """Test a cycle is stored in its minimal rotation."""
        assert canonical_rotation(["lambda", "alpha", "beta"]) == ("alpha", "beta", "lambda")
        assert Cycle.from_arrows(["beta", "lambda", "alpha"]) == Cycle.from_arrows(["alpha", "beta", "lambda"])

    def test_chordless_cycles_of_square(self):
        """Test the commutative square shape has one non-oriented chordless cycle."""
        square = Quiver(["1", "2", "3", "4"], [Arrow("a", "1", "2"), Arrow("b", "2", "4"),
                                               Arrow("c", "1", "3"), Arrow("d", "3", "4")])
        cycles = chordless_cycles(square)
        assert len(cycles) == 1
        assert not cycles[0].oriented
        assert set(cycles[0].vertices) == {"1", "2", "3", "4"}

    def test_oriented_triangle(self):
        """Test an oriented triangle is a single oriented chordless cycle."""
        quiver = Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "3"), Arrow("c", "3", "1")])
        cycles = chordless_cycles(quiver)
        assert len(cycles) == 1
        assert cycles[0].oriented

    def test_two_cycle_and_loop(self):
        """Test a 2-cycle and a loop are chordless cycles."""
        quiver = Quiver(["1", "2", "3"], [Arrow("a", "1", "2"), Arrow("b", "2", "1"), Arrow("l", "3", "3")])
        cycles = chordless_cycles(quiver)
        assert {c.arrows for c in cycles} == {("l",), ("a", "b")}
        assert all(c.oriented for c in cycles)


class TestParser:
    """Test cases for the bound quiver file format."""

    def test_parse_document(self):
        """Test every directive is read."""
        doc = parse_quiver(TWO_ZERO)
        assert doc.name == "two_zero_relations"
        assert doc.field is QQ
        assert [a.name for a in doc.quiver.arrows] == ["alpha", "beta", "gamma", "delta"]
        assert [r.to_text() for r in doc.relations] == ["alpha*beta", "gamma*delta"]
        assert doc.new_arrow_names == ["lambda", "mu"]
        assert doc.potential is None

    def test_serialize_is_stable(self):
        """Test serializing a parsed document and parsing again gives the same text."""
        text = serialize_quiver(parse_quiver(TWO_ZERO))
        assert serialize_quiver(parse_quiver(text)) == text

    def test_comments_and_scalars(self):
        """Test comments are skipped and scalars are exact."""
        doc = parse_quiver("vertices 1 2 3  # three\narrow a 1 2\narrow b 2 3\narrow c 1 3\n"
                           "relation a*b - 1/2*a*b + 3*a*b\n")
        relation = doc.relations[0]
        assert relation.to_text() == "7/2*a*b"

    def test_undeclared_vertex_location(self):
        """Test the column points at the undeclared vertex."""
        with pytest.raises(ParseError) as info:
            parse_quiver("vertices 1 2\narrow a 1 3\n", source="bad.qpa")
        assert (info.value.line, info.value.column) == (2, 11)
        assert str(info.value).startswith("bad.qpa:2:11:")

    def test_undeclared_vertex_is_located_by_token(self):
        """Test the column points at the vertex token, not at an arrow name containing it."""
        with pytest.raises(ParseError) as info:
            parse_quiver("vertices 2\narrow b1 2 1\n")
        assert (info.value.line, info.value.column) == (2, 12)

    def test_duplicate_arrow_located(self):
        """Test a repeated arrow name is reported at its second declaration."""
        with pytest.raises(ParseError) as info:
            parse_quiver("vertices 1 2\narrow a 1 2\narrow a 2 1\n")
        assert (info.value.line, info.value.column) == (3, 7)

    def test_unknown_directive(self):
        """Test unknown keywords are reported at their first character."""
        with pytest.raises(ParseError) as info:
            parse_quiver("vertices 1\n  loop a 1 1\n")
        assert (info.value.line, info.value.column) == (2, 3)

    def test_non_composable_relation(self):
        """Test a relation b*a that does not compose is located at the term."""
        with pytest.raises(CompositionError) as info:
            parse_quiver("vertices 1 2 3\narrow a 1 2\narrow b 2 3\nrelation b*a\n")
        assert (info.value.line, info.value.column) == (4, 10)

    def test_relation_shape(self):
        """Test short and non-parallel relation terms are refused."""
        with pytest.raises(RelationShapeError):
            parse_quiver("vertices 1 2\narrow a 1 2\nrelation a\n")
        with pytest.raises(RelationShapeError):
            parse_quiver("vertices 1 2 3 4\narrow a 1 2\narrow b 2 3\narrow c 2 4\nrelation a*b + a*c\n")

    def test_missing_operator(self):
        """Test two terms without a sign between them."""
        with pytest.raises(ParseError):
            parse_quiver("vertices 1 2 3\narrow a 1 2\narrow b 2 3\nrelation a*b a*b\n")

    def test_invalid_prime_field(self):
        """Test a composite modulus in the field directive."""
        with pytest.raises(ParseError):
            parse_quiver("field F 4\nvertices 1\n")

    def test_potential_must_be_closed(self):
        """Test open paths are refused as potential terms."""
        with pytest.raises(ParseError):
            parse_quiver("vertices 1 2\narrow a 1 2\npotential a\n")

    def test_clashing_new_arrow_name(self):
        """Test new arrow names may not reuse arrow names, and the clash is located."""
        with pytest.raises(ParseError) as info:
            parse_quiver("vertices 1 2\narrow a 1 2\nnew_arrows mu a\n")
        assert (info.value.line, info.value.column) == (3, 15)

    def test_repeated_new_arrow_name(self):
        """Test a new arrow name listed twice is reported at the repetition."""
        with pytest.raises(ParseError) as info:
            parse_quiver("vertices 1 2\narrow a 1 2\n\nnew_arrows mu\nnew_arrows  mu\n")
        assert (info.value.line, info.value.column) == (5, 13)

    def test_parse_element(self):
        """Test linear combinations of paths."""
        doc = parse_quiver(TWO_ZERO)
        x = parse_element(doc.quiver, "alpha*beta - 2*gamma*beta")
        assert len(x.terms) == 2
        with pytest.raises(ParseError):
            parse_element(doc.quiver, "alpha*omega")
