#!/usr/bin/env python3
"""galconj command line: character tables, Galois orbits, GC* checks and the corpus sweep."""
import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import List, Optional

from src import __version__
from src.core import catalog
from src.core.cache_manager import CacheManager
from src.core.chartab import verify_table
from src.core.config import Settings, load_settings
from src.core.corpus_runner import check_spec, obtain_table, run_corpus
from src.core.errors import CatalogError, GalconjError, SpecError
from src.core.galois_orbits import galois_orbits
from src.core.groups import GroupSpec, parse_group_spec
from src.ui import rendering
from src.utils.jsonio import dumps_canonical, write_atomic

EXIT_OK, EXIT_FAILURE, EXIT_INPUT = 0, 1, 2

logger = logging.getLogger('galconj')


def configure_logging(args: argparse.Namespace, settings: Settings) -> None:
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    else:
        level = getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format='%(asctime)s %(levelname)s %(name)s: %(message)s',
    )


def _add_spec_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('path', nargs='?', help='group spec JSON file')
    parser.add_argument('--family', nargs='+', metavar=('NAME', 'P'),
                        help='build the group from a catalog family instead of a file')
    parser.add_argument('--json', action='store_true', help='emit JSON instead of text')
    parser.add_argument('-o', '--output', help='write the result to this file')
    parser.add_argument('--no-cache', action='store_true', help='bypass the table cache')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='galconj',
        description='Exact character tables and Galois-conjugacy classification of finite groups.',
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    parser.add_argument('-q', '--quiet', action='store_true', help='warnings only')
    parser.add_argument('--element-budget', type=int, metavar='N',
                        help='largest group order to enumerate')
    sub = parser.add_subparsers(dest='command', required=True)

    for name, text in (('chartab', 'compute and print the character table'),
                       ('orbits', 'print the Galois orbits on the irreducible characters'),
                       ('check', 'definitional verdict, structural class and their agreement')):
        _add_spec_arguments(sub.add_parser(name, help=text))

    corpus = sub.add_parser('corpus', help='check the builtin corpus or a directory of specs')
    corpus.add_argument('directory', nargs='?', help='directory of spec or entry JSON files')
    corpus.add_argument('--jobs', type=int, default=1, help='worker processes')
    corpus.add_argument('-o', '--output', default='report.json', help='report path')
    corpus.add_argument('--csv', help='also export the report as CSV')
    corpus.add_argument('--timings', action='store_true', help='record wall-clock timings')
    corpus.add_argument('--skip-slow', action='store_true', help='leave out the slow entries')
    corpus.add_argument('--json', action='store_true', help='print the report JSON')
    corpus.add_argument('--no-cache', action='store_true', help='bypass the table cache')

    make = sub.add_parser('make', help='write the spec of a catalog family member')
    make.add_argument('family', choices=sorted(catalog.FAMILIES))
    make.add_argument('params', nargs='*', help='family parameters')
    make.add_argument('-o', '--output', help='spec path (stdout when omitted)')
    make.add_argument('--expand', action='store_true',
                      help='write the concrete spec instead of the family reference')

    sub.add_parser('version', help='print the version')
    return parser


def load_spec(args: argparse.Namespace) -> GroupSpec:
    if args.family:
        name, tokens = args.family[0], args.family[1:]
        params = catalog.parse_family_params(name, tokens)
        return catalog.family_spec(name, params)
    if not args.path:
        raise SpecError('give a spec file or --family NAME P1 P2 ...')
    try:
        text = Path(args.path).read_bytes()
    except OSError as e:
        raise SpecError(f'cannot read {args.path}: {e}') from e
    return parse_group_spec(text)


def _cache(args: argparse.Namespace, settings: Settings) -> Optional[CacheManager]:
    return None if args.no_cache else CacheManager(str(settings.cache_dir))


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        write_atomic(output, text)
    else:
        sys.stdout.write(text)


def cmd_chartab(args: argparse.Namespace, settings: Settings) -> int:
    spec = load_spec(args)
    table = obtain_table(spec, _cache(args, settings), settings.element_budget)
    report = verify_table(table)
    if args.json:
        _emit(dumps_canonical(table.to_json()), args.output)
    else:
        _emit(rendering.render_table(table), args.output)
    if not report.passed:
        logger.error(f'Table verification failed: {report.failure}')
        return EXIT_FAILURE
    return EXIT_OK


def cmd_orbits(args: argparse.Namespace, settings: Settings) -> int:
    spec = load_spec(args)
    table = obtain_table(spec, _cache(args, settings), settings.element_budget)
    report = verify_table(table)
    orbits = galois_orbits(table)
    if args.json:
        _emit(dumps_canonical(orbits.to_json()), args.output)
    else:
        _emit(rendering.render_orbits(orbits), args.output)
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_check(args: argparse.Namespace, settings: Settings) -> int:
    spec = load_spec(args)
    result = check_spec(spec, _cache(args, settings), budget=settings.element_budget)
    if args.json:
        _emit(dumps_canonical(result.to_dict()), args.output)
    else:
        _emit(rendering.render_check(result), args.output)
    return EXIT_OK if result.passed else EXIT_FAILURE


def cmd_corpus(args: argparse.Namespace, settings: Settings) -> int:
    if args.directory:
        entries = catalog.load_corpus_dir(Path(args.directory))
    else:
        entries = catalog.builtin_corpus()
    if args.skip_slow:
        entries = [e for e in entries if not e.slow]
    cache_dir = None if args.no_cache else str(settings.cache_dir)
    report = run_corpus(entries, cache_dir, jobs=max(1, args.jobs), timings=args.timings,
                        budget=settings.element_budget)
    report.write(args.output)
    if args.csv:
        rendering.export_csv(report, args.csv)
    if args.json:
        sys.stdout.write(dumps_canonical(report.to_json()))
    else:
        sys.stdout.write(rendering.render_corpus(report))
    return report.exit_code


def cmd_make(args: argparse.Namespace, settings: Settings) -> int:
    params = catalog.parse_family_params(args.family, args.params)
    spec = catalog.family_spec(args.family, params)
    concrete = catalog.expand_family(spec)
    _emit((concrete if args.expand else spec).emit(), args.output)
    logger.info(f'{spec.display_name}: order {catalog.family_order(args.family, params)}')
    return EXIT_OK


def cmd_version(args: argparse.Namespace, settings: Settings) -> int:
    sys.stdout.write(f'galconj {__version__}\n')
    return EXIT_OK


COMMANDS = {
    'chartab': cmd_chartab,
    'orbits': cmd_orbits,
    'check': cmd_check,
    'corpus': cmd_corpus,
    'make': cmd_make,
    'version': cmd_version,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    settings = load_settings()
    configure_logging(args, settings)
    if args.element_budget:
        settings = dataclasses.replace(settings, element_budget=args.element_budget)
    try:
        return COMMANDS[args.command](args, settings)
    except (SpecError, CatalogError) as e:
        logger.error(str(e))
        return EXIT_INPUT
    except GalconjError as e:
        logger.error(f'{type(e).__name__}: {e}')
        return EXIT_FAILURE
    except OSError as e:
        logger.error(f'I/O error: {e}')
        return EXIT_INPUT


if __name__ == '__main__':
    sys.exit(main())
