#!/usr/bin/env python3
"""
Relation Extension Workbench - Command Line Entry Point

Builds bound quiver algebras from text files, computes relation extensions,
potential decompositions and partial relation extensions, knits
Auslander-Reiten quivers and checks local and complete slices.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add project root to Python path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

from config import Settings  # noqa: E402
from errors import RelextError  # noqa: E402
from monitoring import pipeline_monitor, setup_logging  # noqa: E402
from ui.commands import run_command  # noqa: E402
from ui.reports import FORMATS  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def _common(parser: argparse.ArgumentParser, with_file: bool = True) -> None:
    if with_file:
        parser.add_argument('file', type=str, help='Bound quiver file (.qpa)')
    parser.add_argument('--format', choices=FORMATS, default='json', help='Output format')
    parser.add_argument('--field', type=str, default=None, help='Override the ground field: Q, Fp or "F <p>"')
    parser.add_argument('--length-cap', type=int, default=None, help='Largest path length explored')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Relation Extension Workbench",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Dimension, triangularity and global dimension of an algebra
  python main.py check data/corpus/two_zero_relations.qpa

  # Partial relation extension keeping one new arrow
  python main.py partial data/corpus/gentle_a_tilde.qpa --keep gamma

  # AR quiver of the relation extension as DOT
  python main.py ar data/corpus/two_zero_relations.qpa --extended --format dot
        """
    )
    parser.add_argument('--log-level', type=str, default=None, help='Logging level (default from RELEXT_LOG_LEVEL)')
    parser.add_argument('--metrics-out', type=str, default=None, help='Write timing and memory metrics to a JSON file')
    sub = parser.add_subparsers(dest='command', required=True)

    _common(sub.add_parser('check', help='Dimension, basis, gldim <= 2 and gentle verdicts'))

    extend = sub.add_parser('extend', help='Relation extension, potential and relation bimodule')
    _common(extend)
    extend.add_argument('--stated', type=int, default=None, help='Claimed dim E to arbitrate against')

    _common(sub.add_parser('decompose', help='Dependency components of the potential'))

    partial = sub.add_parser('partial', help='Partial relation extension')
    _common(partial)
    partial.add_argument('--keep', type=str, required=True, help='Kept new arrows, comma separated')

    bimodule = sub.add_parser('bimodule', help='Subbimodule generated by elements of E')
    _common(bimodule)
    bimodule.add_argument('--generator', action='append', default=None, help='Element of E, e.g. "u + v"')

    for name, help_text in (('ar', 'Knit the Auslander-Reiten quiver'), ('slices', 'Local and complete slices')):
        cmd = sub.add_parser(name, help=help_text)
        _common(cmd)
        cmd.add_argument('--cap', type=int, default=None, help='Module cap for knitting')
        cmd.add_argument('--extended', action='store_true', help='Use the relation extension')
        cmd.add_argument('--keep', type=str, default=None, help='Use the partial extension keeping these arrows')
        if name == 'slices':
            mode = cmd.add_mutually_exclusive_group()
            mode.add_argument('--complete', action='store_true', help='Enumerate complete slices (default)')
            mode.add_argument('--local', dest='members', type=str, default=None,
                              help='Check a set given by dimension vectors, e.g. "1,0;1,1"')

    embed = sub.add_parser('embed', help='Embed complete slices of C into middle algebras of C~ -> A -> C')
    _common(embed)
    embed.add_argument('--chain', nargs='+', default=None, help='Middle algebra files')
    embed.add_argument('--keep', type=str, default=None, help='Use the partial extension keeping these arrows')
    embed.add_argument('--cap', type=int, default=None, help='Module cap for knitting')

    corpus = sub.add_parser('corpus', help='List the corpus or regenerate its reports')
    _common(corpus, with_file=False)
    corpus.add_argument('action', choices=('list', 'regenerate'))
    corpus.add_argument('--out', type=str, default='reports', help='Output directory for regenerate')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point with command line interface."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = Settings.from_env()
    except RelextError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR
    setup_logging(args.log_level or settings.log_level, settings.log_file)

    try:
        result = run_command(args.command, args, settings)
    except (RelextError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        code = EXIT_ERROR
    else:
        sys.stdout.write(result.output)
        code = result.exit_code
    finally:
        if args.metrics_out:
            pipeline_monitor.export_metrics(args.metrics_out)
    return code


if __name__ == "__main__":
    sys.exit(main())
