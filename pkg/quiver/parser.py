"""
Bound Quiver File Parser

Reads the line-oriented input language:

    algebra <name>
    field Q | field F <prime>
    vertices <v1> <v2> ...
    arrow <name> <source> <target>
    relation <term> (+|- <term>)*
    potential <term> (+|- <term>)*
    new_arrows <n1> <n2> ...

A term is [<scalar>*]<arrow>(*<arrow>)* with integer or a/b scalars.
Relation terms are parallel paths of length at least two; potential terms
are closed paths. Text after '#' is a comment.
"""

import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path as FilePath
from typing import List, Optional, Tuple

from algebra.element import AlgebraElement
from errors import CompositionError, FieldError, ParseError, QuiverError, RelationShapeError
from exactlin.field import QQ, Field, field_from_name
from potential.potential import Potential
from quiver.path import Path
from quiver.quiver import Arrow, Quiver

TOKEN = re.compile(r"(?:(?P<sign>[+-])|(?P<scalar>\d+(?:/\d+)?)|(?P<star>\*)|(?P<name>[^\W\d]\w*))")
NAME = re.compile(r"[^\W\d]\w*")
WORD = re.compile(r"\S+")

Term = Tuple[object, List[str], int]


@dataclass
class QuiverFile:
    """A parsed input document."""

    name: str
    field: Field
    quiver: Quiver
    relations: List[AlgebraElement]
    potential_terms: List[Tuple[object, List[str]]] = dc_field(default_factory=list)
    new_arrow_names: List[str] = dc_field(default_factory=list)
    source: str = "<string>"

    @property
    def potential(self) -> Optional[Potential]:
        if not self.potential_terms:
            return None
        return Potential.from_terms(self.quiver, self.potential_terms, self.field)

    def __iter__(self):
        yield self.quiver
        yield self.relations


def _words(rest: str, offset: int) -> List[Tuple[str, int]]:
    """Whitespace-separated words of a directive with their 1-based columns."""
    return [(m.group(), offset + m.start() + 1) for m in WORD.finditer(rest)]


def _parse_terms(body: str, offset: int, line: int, source: str, field: Field) -> List[Term]:
    """Tokenize and parse a signed sum of terms; returns (coefficient, arrows, column)."""
    tokens = []
    pos = 0
    while True:
        while pos < len(body) and body[pos].isspace():
            pos += 1
        if pos >= len(body):
            break
        match = TOKEN.match(body, pos)
        if not match:
            raise ParseError(f"unexpected character {body[pos]!r}", line, offset + pos + 1, source)
        kind = match.lastgroup
        tokens.append((kind, match.group(kind), offset + pos + 1))
        pos = match.end()

    terms: List[Term] = []
    i = 0
    while i < len(tokens):
        sign = 1
        kind, text, col = tokens[i]
        if kind == "sign":
            sign = -1 if text == "-" else 1
            i += 1
        elif terms:
            raise ParseError(f"expected '+' or '-' before {text!r}", line, col, source)
        if i >= len(tokens):
            raise ParseError("expected a term", line, offset + len(body) + 1, source)
        kind, text, col = tokens[i]
        term_col = col
        coeff = field.one
        if kind == "scalar":
            coeff = field(text)
            i += 1
            if i >= len(tokens) or tokens[i][0] != "star":
                raise ParseError("expected '*' after scalar", line, col, source)
            i += 1
            if i >= len(tokens):
                raise ParseError("expected an arrow name", line, col, source)
            kind, text, col = tokens[i]
        if kind != "name":
            raise ParseError(f"expected an arrow name, got {text!r}", line, col, source)
        arrows = [text]
        i += 1
        while i < len(tokens) and tokens[i][0] == "star":
            star_col = tokens[i][2]
            i += 1
            if i >= len(tokens) or tokens[i][0] != "name":
                raise ParseError("expected an arrow name after '*'", line, star_col + 1, source)
            arrows.append(tokens[i][1])
            i += 1
        terms.append((coeff * sign, arrows, term_col))
    if not terms:
        raise ParseError("expected a term", line, offset + 1, source)
    return terms


def _path(quiver: Quiver, arrows: List[str], line: int, col: int, source: str) -> Path:
    for name in arrows:
        if not quiver.has_arrow(name):
            raise ParseError(f"unknown arrow {name!r}", line, col, source)
    try:
        return Path.from_arrows(quiver, arrows)
    except CompositionError as exc:
        raise CompositionError(exc.message, line, col, source)


def parse_quiver(text: str, source: str = "<string>") -> QuiverFile:
    """
    Parse an input document.

    Args:
        text: File contents
        source: Name used in error locations

    Returns:
        QuiverFile; iterating it yields (quiver, relations)

    Raises:
        ParseError: On syntax errors, located by line and column
        CompositionError: On non-composable path literals
        RelationShapeError: On non-parallel or too short relation terms
    """
    name = ""
    field: Field = QQ
    vertices: List[str] = []
    arrows: List[Arrow] = []
    raw_relations: List[Tuple[int, int, str]] = []
    raw_potential: List[Tuple[int, int, str]] = []
    new_arrows: List[Tuple[str, int, int]] = []
    seen_vertices = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        indent = len(line) - len(stripped)
        keyword, _, rest = stripped.partition(" ")
        rest_offset = indent + len(keyword) + 1
        words = rest.split()
        if keyword == "algebra":
            if len(words) != 1:
                raise ParseError("expected 'algebra <name>'", lineno, indent + 1, source)
            name = words[0]
        elif keyword == "field":
            try:
                field = field_from_name(rest)
            except FieldError as exc:
                raise ParseError(str(exc), lineno, rest_offset + 1, source)
        elif keyword == "vertices":
            if seen_vertices:
                raise ParseError("duplicate 'vertices' directive", lineno, indent + 1, source)
            seen_vertices = True
            vertices = words
        elif keyword == "arrow":
            if len(words) != 3:
                raise ParseError("expected 'arrow <name> <source> <target>'", lineno, indent + 1, source)
            located = _words(rest, rest_offset)
            arrow_name, name_col = located[0]
            if not NAME.fullmatch(arrow_name):
                raise ParseError(f"invalid arrow name {arrow_name!r}", lineno, name_col, source)
            if any(a.name == arrow_name for a in arrows):
                raise ParseError(f"duplicate arrow {arrow_name!r}", lineno, name_col, source)
            for vertex, col in located[1:]:
                if vertex not in vertices:
                    raise ParseError(f"undeclared vertex {vertex!r}", lineno, col, source)
            arrows.append(Arrow(arrow_name, located[1][0], located[2][0]))
        elif keyword == "relation":
            raw_relations.append((lineno, rest_offset, rest))
        elif keyword == "potential":
            raw_potential.append((lineno, rest_offset, rest))
        elif keyword == "new_arrows":
            new_arrows.extend((n, lineno, col) for n, col in _words(rest, rest_offset))
        else:
            raise ParseError(f"unknown directive {keyword!r}", lineno, indent + 1, source)

    try:
        quiver = Quiver(vertices, arrows)
    except QuiverError as exc:
        raise ParseError(str(exc), 0, 0, source)

    relations = []
    for lineno, offset, body in raw_relations:
        terms = _parse_terms(body, offset, lineno, source, field)
        element_terms = {}
        ends = None
        for coeff, word, col in terms:
            if len(word) < 2:
                raise RelationShapeError(f"relation term {'*'.join(word)} has length < 2", lineno, col, source)
            path = _path(quiver, word, lineno, col, source)
            if ends is None:
                ends = (path.source, path.target)
            elif ends != (path.source, path.target):
                raise RelationShapeError(f"relation term {path} is not parallel to the first term",
                                         lineno, col, source)
            element_terms[path] = element_terms.get(path, field.zero) + coeff
        relation = AlgebraElement(quiver, element_terms, field)
        if relation.is_zero():
            raise RelationShapeError("relation is zero", lineno, offset + 1, source)
        relations.append(relation)

    potential_terms = []
    for lineno, offset, body in raw_potential:
        for coeff, word, col in _parse_terms(body, offset, lineno, source, field):
            path = _path(quiver, word, lineno, col, source)
            if not path.is_closed():
                raise ParseError(f"potential term {path} is not a closed path", lineno, col, source)
            potential_terms.append((coeff, word))

    new_arrow_names: List[str] = []
    for n, lineno, col in new_arrows:
        if not NAME.fullmatch(n) or quiver.has_arrow(n) or n in quiver.vertex_index or n in new_arrow_names:
            raise ParseError(f"invalid or clashing new arrow name {n!r}", lineno, col, source)
        new_arrow_names.append(n)

    return QuiverFile(name=name or "unnamed", field=field, quiver=quiver, relations=relations,
                      potential_terms=potential_terms, new_arrow_names=new_arrow_names, source=source)


def parse_element(quiver: Quiver, text: str, field: Field = QQ) -> AlgebraElement:
    """
    Parse a linear combination of paths such as "u + 2*v*alpha".

    Raises:
        ParseError: On syntax errors or unknown arrows
        CompositionError: On non-composable path literals
    """
    terms = {}
    for coeff, word, col in _parse_terms(text, 0, 1, "<element>", field):
        path = _path(quiver, word, 1, col, "<element>")
        terms[path] = terms.get(path, field.zero) + coeff
    return AlgebraElement(quiver, terms, field)


def load_quiver_file(path: str) -> QuiverFile:
    """Read and parse a file from disk."""
    file_path = FilePath(path)
    return parse_quiver(file_path.read_text(encoding="utf-8"), source=str(file_path))


def serialize_quiver(doc: QuiverFile) -> str:
    """Canonical text of a parsed document."""
    lines = [f"algebra {doc.name}"]
    lines.append("field Q" if doc.field.characteristic == 0 else f"field F {doc.field.characteristic}")
    lines.append("vertices " + " ".join(doc.quiver.vertices))
    for a in doc.quiver.arrows:
        lines.append(f"arrow {a.name} {a.source} {a.target}")
    for relation in doc.relations:
        lines.append(f"relation {relation.to_text()}")
    potential = doc.potential
    if potential is not None and not potential.is_zero():
        lines.append(f"potential {potential.to_text()}")
    if doc.new_arrow_names:
        lines.append("new_arrows " + " ".join(doc.new_arrow_names))
    return "\n".join(lines) + "\n"
