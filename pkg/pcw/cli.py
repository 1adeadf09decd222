#!/usr/bin/env python3
"""
Command line interface for pcw
"""

import logging
import sys
from typing import Any, Callable, List, Optional, Sequence

import click

from . import __version__
from .cache import VerdictCache
from .config import COLOR_MODES, FORMATS, Config
from .corpus import Entry
from .errors import (CheckError, ConfigError, CorpusError, LogicError, ModelError, ParseError,
                     PcwError, ReconstructionError, RuleError, ShapeError, TranslationError)
from .formula import LOGICS
from .models import FRAME_PROPERTIES, SEMANTICS
from .syntax import STRUCTURE_KINDS
from .workbench import CALCULUS_IDS, Workbench, split_id

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3

USAGE_ERRORS = (ParseError, LogicError, ConfigError, CorpusError, RuleError, ModelError,
                ShapeError)
NEGATIVE_ERRORS = (CheckError, TranslationError, ReconstructionError)

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'


def setup_logging(config: Config) -> None:
    """WARNING by default, DEBUG with --verbose, plus a file when asked"""
    logger = logging.getLogger('pcw')
    logger.handlers.clear()
    logger.setLevel(logging.DEBUG if config.verbose else logging.WARNING)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    if config.log_file:
        file_handler = logging.FileHandler(config.log_file)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(file_handler)


def _run(ctx: click.Context, action: Callable[[Workbench], int]) -> None:
    """Run a command body and turn its outcome into an exit status"""
    workbench: Workbench = ctx.obj
    try:
        code = action(workbench)
    except KeyboardInterrupt:
        workbench.formatter.output_info("\nStopped by user")
        code = EXIT_INCONCLUSIVE
    except USAGE_ERRORS as e:
        workbench.formatter.output_error(str(e))
        code = EXIT_USAGE
    except NEGATIVE_ERRORS as e:
        workbench.formatter.output_error(str(e))
        code = EXIT_NEGATIVE
    except PcwError as e:
        workbench.formatter.output_error(str(e))
        code = EXIT_NEGATIVE
    ctx.exit(code)


calculus_option = click.option('--calculus', '-c', 'calc_id', metavar='ID',
                               help=f"Calculus id ({', '.join(CALCULUS_IDS)}); "
                                    "a variant may follow as id+variant")
variant_option = click.option('--variant', help='Calculus variant (struct, reach, cut, ...)')
bound_option = click.option('--bound', type=int, help='Largest model size the oracle tries')
semantics_option = click.option('--semantics', type=click.Choice(SEMANTICS),
                                help='Model class for the oracle')
frame_option = click.option('--frame', multiple=True,
                            type=click.Choice(sorted(FRAME_PROPERTIES)),
                            help='Frame property (can be used multiple times)')


@click.group()
@click.version_option(version=__version__)

# Configuration
@click.option('--config-file', type=click.Path(exists=True), help='Configuration file path')
@click.option('--corpus-dir', type=click.Path(), help='Golden proof directory')

# Output format options
@click.option('--format', 'output_format', type=click.Choice(FORMATS), help='Output format')
@click.option('--pretty', is_flag=True, help='Pretty-print JSON output')
@click.option('--color', type=click.Choice(COLOR_MODES),
              help='Colour text output (default from PCW_COLOR)')

# Cache options
@click.option('--no-cache', is_flag=True, help='Disable the verdict cache')
@click.option('--cache-file', type=click.Path(), help='Verdict cache file (enables the cache)')

# Other options
@click.option('--verbose', '-v', is_flag=True, help='Verbose output mode')
@click.option('--quiet', '-q', is_flag=True, help='Quiet mode, results only')
@click.option('--log-file', type=click.Path(), help='Log file path')
@click.pass_context
def cli(ctx: click.Context, **kwargs: Any) -> None:
    """
    pcw - check, search and translate proofs across sequent calculi

    Examples:

        # Search for a proof of Peirce's law
        pcw prove --calculus scp "((p->q)->p)->p"

        # Check a golden proof
        pcw check --calculus nkt proofs/nkt-axiom-k.json

        # Translate through L'(IL) into N(IL)
        pcw --format json translate --from lil --to nil proofs/lil-imp-refl.json
    """
    try:
        config = Config.from_cli_args(**kwargs)
    except ConfigError as e:
        if not kwargs.get('quiet', False):
            click.echo(f"Error: {e}", err=True)
        ctx.exit(EXIT_USAGE)
    config.ensure_directories()
    setup_logging(config)
    ctx.obj = Workbench(config)


@cli.command()
@click.option('--logic', type=click.Choice(LOGICS), help='Formula logic')
@click.option('--kind', type=click.Choice(STRUCTURE_KINDS), help='Parse a sequent of this shape')
@click.argument('text')
@click.pass_context
def parse(ctx: click.Context, logic: Optional[str], kind: Optional[str], text: str) -> None:
    """Parse a formula or sequent and print it back"""
    def action(wb: Workbench) -> int:
        data = wb.parse(text, logic, kind)
        wb.formatter.output_result(wb.formatter.format_data(data) if wb.formatter.json_mode
                                   else data['text'])
        return EXIT_OK

    _run(ctx, action)


@cli.command('check')
@calculus_option
@variant_option
@click.argument('proof_file', type=click.Path(exists=True))
@click.pass_context
def check_cmd(ctx: click.Context, calc_id: Optional[str], variant: Optional[str],
              proof_file: str) -> None:
    """Check a proof file in a calculus"""
    def action(wb: Workbench) -> int:
        calc, report = wb.check(proof_file, calc_id, variant)
        wb.formatter.output_result(wb.formatter.format_report(report, calc.id))
        return EXIT_OK if report.ok else EXIT_NEGATIVE

    _run(ctx, action)


@cli.command()
@calculus_option
@variant_option
@click.option('--depth', type=int, help='Maximal proof height')
@click.option('--save', metavar='NAME', help='Store a found proof in the corpus')
@click.argument('goal')
@click.pass_context
def prove(ctx: click.Context, calc_id: Optional[str], variant: Optional[str],
          depth: Optional[int], save: Optional[str], goal: str) -> None:
    """Search for a proof of a formula or sequent"""
    def action(wb: Workbench) -> int:
        if not calc_id:
            raise RuleError("prove needs --calculus")
        if depth is not None and depth < 1:
            raise RuleError("--depth must be at least 1")
        calc, result = wb.prove(calc_id, goal, variant, depth)
        wb.formatter.output_result(wb.formatter.format_search(result, calc.id))
        if result.proof is not None and save:
            base, inline = split_id(calc.id)
            with wb.store() as store:
                store.stage(Entry(save, base, variant or inline, result.proof))
            wb.formatter.output_info(f"saved {store.path_for(save)}")
        if result.found:
            return EXIT_OK
        return EXIT_NEGATIVE if result.status == 'open' else EXIT_INCONCLUSIVE

    _run(ctx, action)


@cli.command()
@click.option('--from', 'source', required=True, metavar='ID', help='Source calculus')
@click.option('--to', 'target', required=True, metavar='ID', help='Target calculus')
@click.option('--save', metavar='NAME', help='Store the translated proof in the corpus')
@click.argument('proof_file', type=click.Path(exists=True))
@click.pass_context
def translate(ctx: click.Context, source: str, target: str, save: Optional[str],
              proof_file: str) -> None:
    """Translate a proof and check the result in the target calculus"""
    def action(wb: Workbench) -> int:
        _, proof = wb.load_proof(proof_file, source)
        names, result, report = wb.translate(proof, source, target)
        wb.formatter.output_result(wb.formatter.format_translation(result, report, names))
        if save and report.ok:
            base, inline = split_id(names[-1])
            with wb.store() as store:
                store.stage(Entry(save, base, inline, result))
        return EXIT_OK if report.ok else EXIT_NEGATIVE

    _run(ctx, action)


@cli.command()
@click.option('--logic', type=click.Choice(LOGICS), default='cpc', help='Formula logic')
@calculus_option
@bound_option
@semantics_option
@frame_option
@click.argument('formula')
@click.pass_context
def countermodel(ctx: click.Context, logic: str, calc_id: Optional[str], bound: Optional[int],
                 semantics: Optional[str], frame: Sequence[str], formula: str) -> None:
    """Look for a counter-model; with --calculus scp, read one off a failed search"""
    def action(wb: Workbench) -> int:
        kind, found = wb.countermodel(formula, logic, calc_id, bound, semantics, frame)
        if kind == 'valuation':
            wb.formatter.output_result(wb.formatter.format_valuation(found, formula))
            return EXIT_NEGATIVE
        wb.formatter.output_result(wb.formatter.format_verdict(found, formula))
        return EXIT_INCONCLUSIVE if found.valid else EXIT_NEGATIVE

    _run(ctx, action)


@cli.command()
@click.option('--logic', type=click.Choice(LOGICS), required=True, help='Formula logic')
@bound_option
@semantics_option
@frame_option
@click.argument('formula')
@click.pass_context
def valid(ctx: click.Context, logic: str, bound: Optional[int], semantics: Optional[str],
          frame: Sequence[str], formula: str) -> None:
    """Decide validity over all models up to the bound"""
    def action(wb: Workbench) -> int:
        verdict = wb.valid(logic, formula, bound, semantics, frame)
        wb.formatter.output_result(wb.formatter.format_verdict(verdict, formula))
        return EXIT_OK if verdict.valid else EXIT_NEGATIVE

    _run(ctx, action)


@cli.group()
def corpus() -> None:
    """Golden proof corpus"""


@corpus.command('list')
@click.pass_context
def corpus_list(ctx: click.Context) -> None:
    """List the proofs in the corpus"""
    def action(wb: Workbench) -> int:
        store = wb.store()
        if wb.formatter.json_mode:
            rows = [{'name': e.name, 'calculus': e.calc_id} for e in store.entries()]
            wb.formatter.output_result(wb.formatter.format_data(rows))
        else:
            for e in store.entries():
                wb.formatter.output_result(f"{e.name}\t{e.calc_id}")
        return EXIT_OK

    _run(ctx, action)


@corpus.command('check-all')
@click.option('--translate', 'with_translations', is_flag=True,
              help='Also translate every proof along its registered translations')
@click.pass_context
def corpus_check_all(ctx: click.Context, with_translations: bool) -> None:
    """Check every golden proof"""
    def action(wb: Workbench) -> int:
        rows = wb.check_corpus(with_translations)
        if wb.formatter.json_mode:
            wb.formatter.output_result(wb.formatter.format_data(rows))
        else:
            for row in rows:
                status = 'ok' if row['ok'] else 'FAIL'
                wb.formatter.output_result(f"{status}\t{row['name']}\t{row['calculus']}")
        failed = [row for row in rows if not row['ok']]
        wb.formatter.output_info(f"{len(rows) - len(failed)}/{len(rows)} ok")
        return EXIT_OK if not failed else EXIT_NEGATIVE

    _run(ctx, action)


@cli.group()
def cache() -> None:
    """Verdict cache"""


@cache.command('stats')
@click.pass_context
def cache_stats(ctx: click.Context) -> None:
    """Show cache statistics"""
    def action(wb: Workbench) -> int:
        stats = VerdictCache(wb.config.cache.cache_file).stats()
        wb.formatter.output_result(wb.formatter.format_data(stats))
        return EXIT_OK

    _run(ctx, action)


@cache.command('clear')
@click.pass_context
def cache_clear(ctx: click.Context) -> None:
    """Remove every cached verdict"""
    def action(wb: Workbench) -> int:
        VerdictCache(wb.config.cache.cache_file).clear()
        wb.formatter.output_info("Cache cleared")
        return EXIT_OK

    _run(ctx, action)


def main(argv: Optional[List[str]] = None) -> None:
    """Entry point; click usage errors exit with status 3"""
    try:
        rv = cli.main(args=argv, prog_name='pcw', standalone_mode=False)
    except click.UsageError as e:
        e.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as e:
        e.show()
        sys.exit(EXIT_NEGATIVE)
    except click.exceptions.Abort:
        click.echo("\nStopped by user", err=True)
        sys.exit(EXIT_INCONCLUSIVE)
    except Exception as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_NEGATIVE)
    sys.exit(rv if isinstance(rv, int) else EXIT_OK)


if __name__ == '__main__':
    main()
