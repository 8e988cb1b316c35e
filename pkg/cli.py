"""
rnc: command line for the Cohen-Macaulay classification of lex-segment ideals
and the Groebner fan of the rational normal curve.

Every verb prints one report (json by default, csv or text on request). Domain
errors go to stderr as {"error": code, "message": text} with exit status 1;
usage errors exit with status 2.
"""

import functools
import json
import logging
import sys
from functools import reduce
from typing import Optional

import click

from components import fan, groebner, hilbsym, tpoly, xy_ideals
from utility import reports
from utility.errors import DimensionMismatchError, NegativeWeightError, RncError
from utility.parsing import (parse_ideal, parse_index_sequence, parse_sequence, parse_sequences,
                             parse_weight)
from utility.selftest import run_selftest
from utility.settings import get_settings

logger = logging.getLogger(__name__)

LOG_LEVELS = ('DEBUG', 'INFO', 'WARNING', 'ERROR')


def output_options(command):
    """--format/--json/--out on every verb, so flags may follow the verb."""
    @click.option('--format', 'fmt', type=click.Choice(reports.FORMATS), default=None,
                  help="Output format (default json).")
    @click.option('--json', 'as_json', is_flag=True, help="Shorthand for --format json.")
    @click.option('--out', type=click.Path(dir_okay=False), default=None,
                  help="Write the report to this file instead of stdout.")
    @functools.wraps(command)
    def wrapper(*args, fmt=None, as_json=False, out=None, **kwargs):
        ctx = click.get_current_context()
        options = ctx.ensure_object(dict)
        if as_json:
            options['format'] = 'json'
        elif fmt:
            options['format'] = fmt
        if out:
            options['out'] = out
        try:
            report = command(*args, **kwargs)
        except RncError as e:
            logger.error(f"{e.code}: {e.message}")
            click.echo(json.dumps(e.to_dict(), sort_keys=True), err=True)
            ctx.exit(1)
        except ValueError as e:
            raise click.UsageError(str(e))
        emit(report, options.get('format', 'json'), options.get('out'))
    return wrapper


def emit(report: reports.Report, fmt: str, out: Optional[str]) -> None:
    text = report.render(fmt)
    if out:
        with open(out, 'w') as f:
            f.write(text)
        logger.info(f"Report written to {out}")
    else:
        click.echo(text, nl=False)


def check_length(values, d: int, what: str) -> None:
    if len(values) != d + 1:
        raise DimensionMismatchError(f"{what} has {len(values)} entries, expected {d + 1} for d={d}")


@click.group()
@click.option('--format', 'fmt', type=click.Choice(reports.FORMATS), default='json', help="Output format.")
@click.option('--json', 'as_json', is_flag=True, help="Shorthand for --format json.")
@click.option('--out', type=click.Path(dir_okay=False), default=None, help="Write the report to a file.")
@click.option('--log-level', type=click.Choice(LOG_LEVELS, case_sensitive=False), default='WARNING',
              help="Logging level; logs go to stderr.")
@click.pass_context
def cli(ctx, fmt, as_json, out, log_level):
    """Contracted ideals in K[x,y] and the Groebner fan of the rational normal curve."""
    logging.basicConfig(level=getattr(logging, log_level.upper()), stream=sys.stderr,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    ctx.ensure_object(dict)
    ctx.obj['format'] = 'json' if as_json else fmt
    ctx.obj['out'] = out


@cli.command()
@click.option('--a', 'a_text', required=True, help="Sequence a_0,...,a_d, e.g. 0,2,6,7,9.")
@output_options
def classify(a_text):
    """Hilbert data, deviation and Cohen-Macaulay verdict of one sequence."""
    a = parse_sequence(a_text)
    hilbert = xy_ideals.h_polynomial(a)
    vertices, e0 = xy_ideals.newton_multiplicity(a)
    dev = xy_ideals.deviation(a)
    payload = {
        'a': a.to_json(),
        'b': list(a.b),
        'lex_segment': a.is_lex_segment,
        'hilbert': hilbert.to_json(),
        'newton_vertices': list(vertices),
        'newton_e0': e0,
        'deviation': dev,
        'cm': dev == 0,
        'cones': [list(i) for i in fan.cones_containing(a, closed=True)],
        'integrally_closed_pattern': xy_ideals.is_integrally_closed_pattern(a),
        'monomial_reduction': xy_ideals.has_monomial_reduction(a),
    }
    if a.is_lex_segment:
        payload['breakdown'] = xy_ideals.deviation_breakdown(a)
    table = reports.flatten({k: v for k, v in payload.items() if k not in ('hilbert', 'breakdown')})
    return reports.Report(payload, table)


@cli.command()
@click.option('--factors', required=True, help="Sequences separated by ';', e.g. 0,4,6,7;0,2.")
@click.option('--same-direction', is_flag=True, help="Multiply the factors as one lex-segment pattern.")
@output_options
def product(factors, same_direction):
    """Cohen-Macaulay test for a product of lex-segment ideals."""
    seqs = parse_sequences(factors)
    if not seqs:
        raise ValueError("No factors given")
    payload = {'factors': [s.to_json() for s in seqs], 'same_direction': same_direction}
    if same_direction:
        c = reduce(xy_ideals.minplus_product, seqs)
        dev = xy_ideals.deviation(c)
        payload.update({'product': c.to_json(), 'deviation': dev, 'cm': dev == 0})
    else:
        payload.update({
            'factor_cm': [xy_ideals.is_gr_cm(s) for s in seqs],
            'cm': xy_ideals.zariski_product_cm(seqs),
        })
    return reports.Report(payload)


@cli.command('cm-list')
@click.option('--d', 'd', type=click.IntRange(min=1), required=True)
@output_options
def cm_list(d):
    """The 2^(d-1) Cohen-Macaulay cells with their reduced Groebner bases."""
    entries = []
    for i in fan.cm_sequences(d):
        gb = groebner.cm_reduced_gb(i)
        cone = fan.cone_system(i)
        I = gb.leads_ideal()
        entries.append({
            'sequence': list(i),
            'canonical_permutation': list(groebner.canonical_permutation(i)),
            'canonical_weight': list(groebner.canonical_weight(i)),
            'initial_ideal': I.to_json(),
            'initial_ideal_text': str(I),
            'gb': gb.to_json(),
            'gb_text': [str(g) for g in gb.elements],
            'cone': cone.to_json(),
            'cone_text': cone.describe('b'),
        })
    return reports.Report(entries, reports.catalog_frame(entries))


@cli.command()
@click.option('--d', 'd', type=click.IntRange(min=1), required=True)
@click.option('--weight', required=True, help="Rational weight w_0,...,w_d.")
@click.option('--tiebreak', type=click.Choice(groebner.TIEBREAKS), default=None)
@output_options
def gb(d, weight, tiebreak):
    """Reduced Groebner basis of P for a weight order, with its cone."""
    w = parse_weight(weight)
    check_length(w, d, "Weight")
    if any(v < 0 for v in w):
        raise NegativeWeightError(f"Weights must be non-negative, got {weight}")
    order = groebner.TermOrder(w, tiebreak or get_settings().default_tiebreak)
    basis = groebner.buchberger(d, order)
    cone = fan.groebner_cone(basis)
    forms = groebner.initial_forms(d, w, order.tiebreak)
    payload = {
        'order': order.to_json(),
        'gb': basis.to_json(),
        'gb_text': [str(g) for g in basis.elements],
        'initial_ideal': basis.leads_ideal().to_json(),
        'initial_forms': forms.to_json(),
        'facets': cone.facets.to_json(),
        'facets_text': cone.facets.describe('b'),
    }
    table = reports.flatten([{'element': str(g), 'lead': tpoly.monomial_str(g.lead)} for g in basis.elements])
    return reports.Report(payload, table)


@cli.command('fan')
@click.option('--d', 'd', type=click.IntRange(min=1), required=True)
@click.option('--census', is_flag=True, help="Only the depth histogram.")
@click.option('--sample', type=click.IntRange(min=1), default=None,
              help="Check the Cohen-Macaulay catalog on N sampled weights instead of traversing.")
@click.option('--max-d', type=click.IntRange(min=1), default=None, help="Override the traversal cap.")
@click.option('--tiebreak', type=click.Choice(groebner.TIEBREAKS), default=None)
@click.option('--workers', type=click.IntRange(min=1), default=None)
@output_options
def fan_command(d, census, sample, max_d, tiebreak, workers):
    """All maximal cells of the Groebner fan of P."""
    if sample is not None:
        report = fan.catalog_check(d, samples=sample, seed=get_settings().seed)
        return reports.Report(report)
    cells = fan.traverse_fan(d, tiebreak=tiebreak, workers=workers, max_d=max_d)
    counts = fan.depth_census(d, cells)
    if census:
        return reports.Report(reports.census_payload(counts), reports.census_frame(counts))
    payload = {
        'd': d,
        'cells': [c.to_json() for c in cells],
        'census': reports.census_payload(counts),
    }
    return reports.Report(payload, reports.cells_frame(cells))


@cli.command()
@click.option('--d', 'd', type=click.IntRange(min=1), required=True)
@click.option('--member', default=None, help="Sequence to test for membership.")
@click.option('--verify', is_flag=True, help="Also run the closure and sampling checks.")
@output_options
def bigcone(d, member, verify):
    """The convex cone b_j <= b_(j+2) of Cohen-Macaulay weights."""
    cone = fan.big_cone(d)
    payload = cone.to_json()
    payload['sequences'] = [list(i) for i in cone.sequences]
    if member is not None:
        a = parse_sequence(member)
        check_length(a.a, d, "Sequence")
        payload['member'] = cone.member(a)
    if verify:
        payload['verification'] = fan.verify_big_cone(d)
    return reports.Report(payload)


@cli.command()
@click.option('--d', 'd', type=click.IntRange(min=1), required=True)
@click.option('--sequence', 'sequence', default=None, help="Cohen-Macaulay sequence i, e.g. 0,2,3.")
@click.option('--ideal', default=None, help="Initial ideal, e.g. 't1*t3;t0*t3;t0*t2'.")
@output_options
def symbolic(d, sequence, ideal):
    """Symbolic h-polynomial, Hilbert coefficients and polynomials of a cell."""
    if (sequence is None) == (ideal is None):
        raise ValueError("Give exactly one of --sequence and --ideal")
    if sequence is not None:
        i = groebner.cm_sequence(parse_index_sequence(sequence))
        if i[-1] != d:
            raise DimensionMismatchError(f"Sequence {i} ends at {i[-1]}, expected {d}")
        I = groebner.cm_reduced_gb(i).leads_ideal()
    else:
        I = parse_ideal(ideal, d)
    data = hilbsym.symbolic_h(I)
    payload = data.to_json()
    payload['ideal'] = I.to_json()
    payload['ideal_text'] = str(I)
    payload['components'] = tpoly.ideal_components(I).to_json()
    table = reports.flatten([{'invariant': name, 'form': str(f)} for name, f in
                             [(f"h{j}", f) for j, f in enumerate(data.h)]
                             + [(f"e{j}", f) for j, f in enumerate(data.e)]])
    return reports.Report(payload, table)


@cli.command()
@click.option('--d', 'd', type=click.IntRange(min=1), required=True)
@click.option('--ideal1', default=None)
@click.option('--ideal2', default=None)
@click.option('--dump-counterexamples', is_flag=True,
              help="Compare every pair of fan cells and list those where Q-equality and top-component equality disagree.")
@output_options
def compare(d, ideal1, ideal2, dump_counterexamples):
    """Which Hilbert invariants of two cells agree."""
    payload = {}
    if ideal1 is not None or ideal2 is not None:
        if ideal1 is None or ideal2 is None:
            raise ValueError("--ideal1 and --ideal2 go together")
        I, J = parse_ideal(ideal1, d), parse_ideal(ideal2, d)
        payload['comparison'] = hilbsym.compare_invariants(I, J).to_json()
    if dump_counterexamples:
        ideals = [c.initial_ideal for c in fan.traverse_fan(d)]
        found = []
        for I in ideals:
            for J in ideals:
                if not hilbsym.compare_invariants(I, J).toppo_consistent:
                    found.append({'ideal1': str(I), 'ideal2': str(J)})
        payload['pairs_checked'] = len(ideals) ** 2
        payload['counterexamples'] = found
    if not payload:
        raise ValueError("Give --ideal1/--ideal2 or --dump-counterexamples")
    return reports.Report(payload)


@cli.command()
@click.option('--quick', is_flag=True, help="Skip the d=5, d=6 catalogs and the exhaustive d=4 comparison.")
@output_options
def selftest(quick):
    """Run the acceptance suite; exit status 1 if any check fails."""
    results = run_selftest(quick)
    payload = {'checks': results, 'passed': all(r['passed'] for r in results)}
    report = reports.Report(payload, reports.checks_frame(results))
    if not payload['passed']:
        ctx = click.get_current_context()
        emit(report, ctx.obj.get('format', 'json'), ctx.obj.get('out'))
        ctx.exit(1)
    return report


def main():
    cli(obj={})


if __name__ == '__main__':
    main()
