"""
Command Implementations

Each command takes the parsed arguments and the runtime settings and returns
a CommandResult: the rendered output and the exit code (0 success, 1 a
computed verdict is false). Library errors propagate to main.py, which
turns them into exit code 2.
"""

import argparse
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from algebra.bound_algebra import BoundAlgebra
from algebra.homological import global_dimension_le, is_gentle
from config import Settings
from corpus.corpus_handler import CorpusHandler, algebra_from_document
from errors import PreconditionError
from exactlin.field import field_from_name
from extension.bimodule import (induced_bimodule_decomposition, is_direct_summand, structural_and_homological_dims,
                                subbimodule_generated)
from extension.converse import is_cyclically_oriented_extension
from extension.partial_extension import build_partial_extension, check_trivial_extension_transitivity
from extension.relation_extension import RelationExtension, build_relation_extension
from extension.surjection import quotient_surjection
from monitoring import monitor_operation
from potential.potential import Potential, coarsenings, dependency_components
from quiver.parser import QuiverFile, parse_element, parse_quiver
from repmod.knitting import knit_ar_quiver
from slices.slices import (SliceCandidate, embed_and_verify, enumerate_complete_slices, is_local_slice,
                           slices_to_json)
from ui.reports import render, to_json_text

logger = logging.getLogger(__name__)


@dataclass
class CommandResult:
    output: str
    exit_code: int = 0
    report: Optional[Dict[str, Any]] = None


def load_document(path: str, field: Optional[str] = None, default_prime: int = 32003) -> QuiverFile:
    """
    Parse an input file, optionally overriding its field directive.

    Raises:
        OSError: If the file cannot be read
        ParseError: On malformed input
    """
    text = Path(path).read_text(encoding="utf-8")
    if field:
        chosen = field_from_name(field, default_prime)
        directive = "field Q" if chosen.characteristic == 0 else f"field F {chosen.characteristic}"
        body = [line for line in text.splitlines() if not line.lstrip().startswith("field")]
        text = "\n".join([directive] + body) + "\n"
    return parse_quiver(text, source=path)


def parse_keep(text: Optional[str]) -> Optional[List[str]]:
    if text is None:
        return None
    return [a for a in re.split(r"[,\s]+", text) if a]


def _settings_caps(args: argparse.Namespace, settings: Settings) -> Tuple[int, int]:
    knit_cap = getattr(args, "cap", None) or settings.knit_cap
    length_cap = getattr(args, "length_cap", None) or settings.length_cap
    return knit_cap, length_cap


def _load(args: argparse.Namespace, settings: Settings, path: Optional[str] = None) -> Tuple[QuiverFile, BoundAlgebra]:
    _, length_cap = _settings_caps(args, settings)
    doc = load_document(path or args.file, getattr(args, "field", None), settings.default_prime)
    return doc, algebra_from_document(doc, length_cap=length_cap)


def _extend(doc: QuiverFile, algebra: BoundAlgebra) -> RelationExtension:
    return build_relation_extension(algebra, doc.new_arrow_names or None)


def _target_algebra(args: argparse.Namespace, settings: Settings) -> BoundAlgebra:
    """The base algebra, its relation extension (--extended) or a partial extension (--keep)."""
    doc, algebra = _load(args, settings)
    keep = parse_keep(getattr(args, "keep", None))
    if getattr(args, "extended", False):
        return _extend(doc, algebra).extended
    if keep is not None:
        return build_partial_extension(_extend(doc, algebra), keep).algebra
    return algebra


@monitor_operation("check")
def cmd_check(args: argparse.Namespace, settings: Settings) -> CommandResult:
    _, algebra = _load(args, settings)
    report = algebra.to_json()
    certificate = global_dimension_le(algebra, 2)
    report.update({
        "triangular": algebra.quiver.is_acyclic(),
        "gldim_le_2": bool(certificate),
        "projective_dimensions": {v: d for v, d in certificate.projective_dimensions.items()},
        "gentle": is_gentle(algebra),
        "minimal_relations": [r.element.to_text() for r in algebra.minimal_relation_system()],
    })
    return CommandResult(render(report, args.format), 0, report)


@monitor_operation("extend")
def cmd_extend(args: argparse.Namespace, settings: Settings) -> CommandResult:
    doc, algebra = _load(args, settings)
    extension = _extend(doc, algebra)
    report = extension.to_json()
    report["cyclically_oriented"] = is_cyclically_oriented_extension(extension)
    report["arbitration"] = structural_and_homological_dims(extension, getattr(args, "stated", None))
    verdict_ok = report["arbitration"]["graded_agree"] and all(report["invariants"].values())
    return CommandResult(render(report, args.format), 0 if verdict_ok else 1, report)


def _potential_of(doc: QuiverFile, algebra_factory) -> Tuple[Potential, Optional[RelationExtension]]:
    if doc.potential is not None:
        return doc.potential, None
    extension = _extend(doc, algebra_factory())
    return extension.potential, extension


@monitor_operation("decompose")
def cmd_decompose(args: argparse.Namespace, settings: Settings) -> CommandResult:
    doc = load_document(args.file, getattr(args, "field", None), settings.default_prime)
    _, length_cap = _settings_caps(args, settings)
    w, extension = _potential_of(doc, lambda: algebra_from_document(doc, length_cap=length_cap))
    decomposition = dependency_components(w)
    report: Dict[str, Any] = {
        "schema": "relext.decomposition/1",
        "potential": w.to_text(),
        "components": [
            {"potential": s.to_text(), "arrows": sorted(arrows)}
            for s, arrows in zip(decomposition.summands, decomposition.arrow_partition)
        ],
        "count": len(decomposition),
    }
    if extension is not None:
        splits = []
        for w1, w2 in coarsenings(decomposition):
            split = induced_bimodule_decomposition(extension, w1, w2)
            splits.append({"first": w1.to_text(), "second": w2.to_text() if not w2.is_zero() else "0",
                           "dims": [split.first.dim, split.second.dim], "direct": split.is_direct})
        report["splits"] = splits
    return CommandResult(render(report, args.format), 0, report)


@monitor_operation("partial")
def cmd_partial(args: argparse.Namespace, settings: Settings) -> CommandResult:
    doc, algebra = _load(args, settings)
    extension = _extend(doc, algebra)
    keep = parse_keep(args.keep) or []
    pe = build_partial_extension(extension, keep)
    report = pe.to_json()
    transitivity = check_trivial_extension_transitivity(extension, pe)
    report["transitivity"] = {"holds": transitivity.holds, "dimension_ok": transitivity.dimension_ok,
                              "failures": [list(f) for f in transitivity.failures[:10]]}
    report["surjections_valid"] = pe.from_extended().is_valid() and pe.to_base().is_valid()
    ok = transitivity.holds and report["surjections_valid"] and report["dimension_ok"]
    return CommandResult(render(report, args.format), 0 if ok else 1, report)


@monitor_operation("bimodule")
def cmd_bimodule(args: argparse.Namespace, settings: Settings) -> CommandResult:
    doc, algebra = _load(args, settings)
    extension = _extend(doc, algebra)
    if not args.generator:
        raise PreconditionError("bimodule needs --generator")
    generators = [parse_element(extension.quiver, text, extension.extended.field) for text in args.generator]
    generated = subbimodule_generated(extension, generators, name=" , ".join(args.generator))
    summand = is_direct_summand(extension, generated)
    report = {
        "schema": "relext.bimodule/1",
        "algebra": algebra.name,
        "generators": list(args.generator),
        "dim_E": extension.e_dim,
        "bimodule": generated.to_json(),
        "direct_summand": summand.is_summand,
        "complement": summand.complement.to_json() if summand.complement is not None else None,
    }
    return CommandResult(render(report, args.format), 0 if summand.is_summand else 1, report)


@monitor_operation("ar")
def cmd_ar(args: argparse.Namespace, settings: Settings) -> CommandResult:
    knit_cap, _ = _settings_caps(args, settings)
    target = _target_algebra(args, settings)
    ar = knit_ar_quiver(target, module_cap=knit_cap)
    report = ar.to_json()
    return CommandResult(render(report, args.format, dot=ar.to_dot()), 0, report)


def _parse_members(text: str) -> List[List[int]]:
    """Dimension vectors separated by ';', entries by ','."""
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip().strip("()")
        if not chunk:
            continue
        try:
            vectors.append([int(x) for x in re.split(r"[,\s]+", chunk) if x])
        except ValueError:
            raise PreconditionError(f"malformed dimension vector {chunk!r}")
    return vectors


@monitor_operation("slices")
def cmd_slices(args: argparse.Namespace, settings: Settings) -> CommandResult:
    knit_cap, _ = _settings_caps(args, settings)
    target = _target_algebra(args, settings)
    ar = knit_ar_quiver(target, module_cap=knit_cap)
    if args.members:
        candidate = SliceCandidate.from_dimension_vectors(ar, _parse_members(args.members))
        local = is_local_slice(candidate)
        report = slices_to_json(ar, [local])
        return CommandResult(render(report, args.format, dot=local.to_dot()), 0 if local.is_local_slice else 1,
                             report)
    found = enumerate_complete_slices(ar, cap=settings.slice_search_cap)
    report = slices_to_json(ar, found)
    dot = found[0].to_dot() if found else ar.to_dot()
    return CommandResult(render(report, args.format, dot=dot), 0 if found else 1, report)


@monitor_operation("embed")
def cmd_embed(args: argparse.Namespace, settings: Settings) -> CommandResult:
    """Embed every complete slice of C into each middle algebra of a chain C~ -> A -> C."""
    knit_cap, length_cap = _settings_caps(args, settings)
    doc, base = _load(args, settings)
    extension = _extend(doc, base)
    middles: List[BoundAlgebra] = []
    keep = parse_keep(getattr(args, "keep", None))
    if keep is not None:
        middles.append(build_partial_extension(extension, keep).algebra)
    for path in args.chain or []:
        _, middle = _load(args, settings, path)
        middles.append(middle)
    if not middles:
        raise PreconditionError("embed needs --chain files or --keep")

    ar_base = knit_ar_quiver(base, module_cap=knit_cap)
    slices = enumerate_complete_slices(ar_base, cap=settings.slice_search_cap)
    results = []
    ok = bool(slices)
    for middle in middles:
        ar_middle = knit_ar_quiver(middle, module_cap=knit_cap)
        embedded = embed_and_verify(slices, quotient_surjection(middle, base), ar_middle,
                                    from_extended=quotient_surjection(extension.extended, middle))
        ok = ok and all(embedded)
        results.append({"algebra": middle.name, "modules": len(ar_middle),
                        "embeddings": [e.to_json() for e in embedded]})
    report = {
        "schema": "relext.embed/1",
        "base": base.name,
        "complete_slices": len(slices),
        "middles": results,
        "holds": ok,
    }
    return CommandResult(render(report, args.format), 0 if ok else 1, report)


COMMANDS = {
    "check": cmd_check,
    "extend": cmd_extend,
    "decompose": cmd_decompose,
    "partial": cmd_partial,
    "bimodule": cmd_bimodule,
    "ar": cmd_ar,
    "slices": cmd_slices,
    "embed": cmd_embed,
}


def command_namespace(**overrides) -> argparse.Namespace:
    """Arguments with every option at its default, for running commands programmatically."""
    values: Dict[str, Any] = {
        "file": None, "format": "json", "field": None, "cap": None, "length_cap": None, "keep": None,
        "extended": False, "generator": None, "members": None, "chain": None, "stated": None,
    }
    values.update(overrides)
    return argparse.Namespace(**values)


def _corpus_jobs(handler: CorpusHandler) -> List[Tuple[str, str, argparse.Namespace]]:
    jobs = []
    for entry in handler.entries():
        keep = entry.options.get("keep")
        keep_text = ",".join(keep) if keep is not None else None
        for report in entry.reports:
            overrides: Dict[str, Any] = {"file": str(entry.path)}
            if report == "partial" or (report == "ar" and keep_text):
                overrides["keep"] = keep_text
            if report == "bimodule":
                overrides["generator"] = [entry.options.get("generator", "")]
            if report == "extend" and "stated_dim_E" in entry.expected:
                overrides["stated"] = entry.expected["stated_dim_E"]
            if report == "embed":
                chain = entry.options.get("chain")
                if chain:
                    base = handler.entry(chain["base"])
                    overrides.update({"file": str(base.path), "chain": [str(entry.path)]})
                else:
                    overrides["keep"] = keep_text
            jobs.append((entry.name, report, command_namespace(**overrides)))
    return jobs


@monitor_operation("corpus")
def cmd_corpus(args: argparse.Namespace, settings: Settings) -> CommandResult:
    """`corpus list` prints the manifest; `corpus regenerate --out DIR` rewrites every report artifact."""
    handler = CorpusHandler(settings.corpus_path)
    if args.action == "list":
        rows = handler.list_table()
        report = {"schema": "relext.corpus/1", "entries": rows}
        return CommandResult(render(report, args.format), 0, report)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    failures = 0
    for name, report_kind, namespace in _corpus_jobs(handler):
        result = COMMANDS[report_kind](namespace, settings)
        target = out / f"{name}.{report_kind}.json"
        target.write_text(to_json_text(result.report), encoding="utf-8")
        written.append({"entry": name, "report": report_kind, "exit_code": result.exit_code, "file": target.name})
        if result.exit_code:
            failures += 1
        logger.info(f"regenerated {target}")
    report = {"schema": "relext.corpus/1", "written": written}
    return CommandResult(render(report, args.format), 1 if failures else 0, report)


COMMANDS["corpus"] = cmd_corpus


def run_command(name: str, args: argparse.Namespace, settings: Settings) -> CommandResult:
    return COMMANDS[name](args, settings)
