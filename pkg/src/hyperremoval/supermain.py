#!/usr/bin/env python3
"""
Command line front door.

Subcommands:
    analyze    case analysis of F (k-partite, core, witness)
    core       the core of F with its retraction
    behrend    a solution-free set for --m and --t
    construct  hard instance for F (built on its core and lifted back to F)
    verify     recount an instance written by `construct`
    report     table of instance sizes and copy counts over an n grid

Usage:
    hyperremoval analyze F.txt
    hyperremoval construct F.txt --n 40 --seed 42 --out instance.json
    hyperremoval verify instance.json
    hyperremoval report F.txt --n-grid 30 60 90 --plot report.png

Exit codes: 0 verified, 1 verification failure, 2 usage error, 3 budget exceeded.
"""

import argparse
import io
import json
import logging
import sys
from pathlib import Path

import pandas as pd

from hyperremoval.behrend import behrend_set, verify_solution_free
from hyperremoval.config import RunConfig
from hyperremoval.constructions import PartiteInstance, amplify_blowup, copy_edge_sets, \
    reduce_to_core_instance
from hyperremoval.counting import count_copies, verify_edge_disjoint
from hyperremoval.errors import EXIT_BUDGET_EXCEEDED, EXIT_OK, EXIT_USAGE, \
    EXIT_VERIFICATION_FAILED, ConstructionError, HyperremovalError, PreconditionError
from hyperremoval.homomorphism import core
from hyperremoval.hypergraph import KGraph, is_k_partite, read_kgraph
from hyperremoval.structure_analysis import analyze

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ['n', 'placed_edge_disjoint_count', 'eps', 'total_F_copies', 'delta', 'bound', 'status']


def _emit(text, config):
    if config.output_path:
        path = Path(config.output_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            f.write(text)
        logger.info('Wrote %s', path)
    else:
        sys.stdout.write(text)


def _emit_json(payload, config):
    document = dict(config.provenance())
    document.update(payload)
    _emit(json.dumps(document, indent=2) + '\n', config)


def cmd_analyze(config):
    F = read_kgraph(config.input_path)
    report = analyze(F, core_vertex_cap=config.core_vertex_cap, node_budget=config.node_budget)
    _emit_json({'analysis': report.to_dict()}, config)
    return EXIT_OK


def cmd_core(config):
    F, removed = read_kgraph(config.input_path).normalize()
    result = core(F, core_vertex_cap=config.core_vertex_cap, node_budget=config.node_budget)
    _emit_json({'core': result.core.to_dict(),
                'retraction': list(result.retraction.mapping),
                'embedding': list(result.embedding),
                'removedIsolated': list(removed)}, config)
    return EXIT_OK


def cmd_behrend(config, m, t, verify):
    B = behrend_set(m, t, oracle_cap=config.oracle_cap)
    payload = {'size': B.size, 'elements': list(B.elements), 'construction': B.construction,
               'verified': B.verification == 'verified'}
    if verify:
        result = verify_solution_free(B.elements, t, m, cap=config.oracle_cap)
        payload['verification'] = result.status
        payload['counterexample'] = list(result.counterexample) if result.counterexample else None
    _emit_json({'behrend': payload}, config)
    return EXIT_OK if payload['verified'] else EXIT_BUDGET_EXCEEDED


def cmd_construct(config, amplify=None):
    F = read_kgraph(config.input_path)
    reduction = reduce_to_core_instance(F, config.n, seed=config.seed, retry_cap=config.retry_cap,
                                        oracle_cap=config.oracle_cap, node_budget=config.node_budget,
                                        core_vertex_cap=config.core_vertex_cap)
    payload = {'instance': reduction.instance.to_dict(), 'lifted': None}
    if reduction.lifted:
        payload['lifted'] = {'F': reduction.report.graph.to_dict(),
                             'graph': reduction.graph.to_dict(),
                             'copies': [list(c) for c in reduction.copies]}
    if amplify:
        blown = amplify_blowup(reduction.instance, reduction.report.core, amplify, seed=config.seed,
                               deterministic=config.deterministic_design, retry_cap=config.retry_cap)
        payload['amplified'] = {'b': blown.b, 'graph': blown.graph.to_dict(),
                                'copies': [list(c) for c in blown.copies],
                                'homomorphism': list(blown.homomorphism.mapping)}
    _emit_json(payload, config)
    return EXIT_OK


def cmd_verify(config):
    """Recount the instance in the document written by `construct`."""
    with open(config.input_path, encoding='utf-8') as f:
        document = json.load(f)
    instance = PartiteInstance.from_dict(document.get('instance', document))
    F = KGraph.from_dict(instance.meta['F'])
    copies = instance.placed_vertex_tuples()
    n, v = instance.n, F.v

    report = count_copies(instance.graph, F, node_budget=config.node_budget, workers=config.workers)
    checks = {
        'partite': instance.is_partite(),
        'edgeDisjoint': verify_edge_disjoint(copy_edge_sets(F, copies)).ok,
        'collapseHomomorphism': instance.collapse_map().is_homomorphism(instance.graph, F),
        'lowerBound': len(copies) >= instance.meta.get('lowerBound', 0),
        'countBound': None if report.exceeded else report.count <= n ** (v - 1),
    }
    passed = all(value is not False for value in checks.values())
    _emit_json({'count': report.to_dict(), 'checks': checks,
                'placed': len(copies), 'bound': n ** (v - 1), 'passed': passed}, config)
    if not passed:
        return EXIT_VERIFICATION_FAILED
    return EXIT_BUDGET_EXCEEDED if report.exceeded else EXIT_OK


def run_report(F, n_grid, seed=0, config=None):
    """
    One row per n: placed edge-disjoint copies, their density eps = placed/n^k,
    the total number of copies of F, delta = total/n^v(F), and the bound 1/n.

    Rows whose construction fails are kept with status 'construction_failed'.

    Returns:
        pandas.DataFrame with the REPORT_COLUMNS
    """
    config = config or RunConfig(command='report', seed=seed)
    F, _ = F.normalize()
    if is_k_partite(F) is not None:
        raise PreconditionError(f'{F!r} is {F.k}-partite, so its removal lemma is polynomial '
                                'and there is no hard instance to report on')
    rows = []
    for n in n_grid:
        try:
            reduction = reduce_to_core_instance(F, n, seed=seed, retry_cap=config.retry_cap,
                                                oracle_cap=config.oracle_cap,
                                                node_budget=config.node_budget,
                                                core_vertex_cap=config.core_vertex_cap)
        except ConstructionError as e:
            logger.warning('Construction failed at n=%d: %s', n, e)
            rows.append({'n': n, 'status': 'construction_failed'})
            continue
        placed = len(reduction.copies)
        counted = count_copies(reduction.graph, F, node_budget=config.node_budget,
                               workers=config.workers)
        total = counted.count
        rows.append({
            'n': n,
            'placed_edge_disjoint_count': placed,
            'eps': placed / n ** F.k,
            'total_F_copies': total,
            'delta': total / n ** F.v if total is not None else None,
            'bound': n ** (F.v - 1) / n ** F.v,
            'status': 'exact' if total is not None else 'capped',
        })
    return pd.DataFrame(rows, columns=REPORT_COLUMNS)


def plot_report(frame, path):
    """Scatter log(1/delta) against log(1/eps) for the rows with exact counts."""
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt
    import numpy as np

    done = frame[frame['status'] == 'exact']
    fig, ax = plt.subplots(figsize=(6, 4))
    x = np.log(1 / done['eps'].astype(float))
    y = np.log(1 / done['delta'].astype(float))
    ax.plot(x, y, 'o-')
    for xi, yi, n in zip(x, y, done['n']):
        ax.annotate(f'n={n}', (xi, yi), textcoords='offset points', xytext=(4, 4))
    ax.set_xlabel('log(1/eps)')
    ax.set_ylabel('log(1/delta)')
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    logger.info('Saved plot to %s', path)


def cmd_report(config, plot=None):
    F = read_kgraph(config.input_path)
    frame = run_report(F, config.n_grid, seed=config.seed, config=config)
    if config.format == 'json':
        _emit_json({'rows': json.loads(frame.to_json(orient='records'))}, config)
    else:
        provenance = config.provenance()
        header = '# ' + ' '.join(f'{key}={value}' for key, value in provenance.items()) + '\n'
        buffer = io.StringIO()
        frame.to_csv(buffer, index=False)
        _emit(header + buffer.getvalue(), config)
    if plot:
        plot_report(frame, plot)
    return EXIT_OK


def _non_negative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f'expected a non-negative integer, got {text}')
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog='hyperremoval',
        description='Hard instances for the hypergraph removal lemma'
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, default=None, help='Part size (default: 30)')
    common.add_argument('--seed', type=_non_negative_int, default=None, help='Random seed (default: 0)')
    common.add_argument('--out', default=None, help='Output file (default: stdout)')
    common.add_argument('--format', choices=['json', 'csv'], default=None,
                        help='Output format (default: json)')
    common.add_argument('--node-budget', type=int, default=None, help='Search node budget')
    common.add_argument('--retry-cap', type=int, default=None, help='Retries of random constructions')
    common.add_argument('--oracle-cap', type=int, default=None, help='Work cap of exact oracles')
    common.add_argument('--core-vertex-cap', type=int, default=None,
                        help='Largest core for the exhaustive retraction phase')
    common.add_argument('--workers', type=int, default=None, help='Worker processes for counting')
    common.add_argument('--deterministic-design', action='store_true', default=None,
                        help='Use the algebraic disjoint families')
    common.add_argument('--verbose', action='store_true', help='Enable verbose logging')

    commands = parser.add_subparsers(dest='command', required=True)
    for name, text in [('analyze', 'Case analysis of F'), ('core', 'Core of F'),
                       ('construct', 'Build the hard instance for F'),
                       ('verify', 'Verify an instance JSON')]:
        sub = commands.add_parser(name, parents=[common], help=text)
        sub.add_argument('input', help='Hypergraph file (text or .json) or instance JSON')
        if name == 'construct':
            sub.add_argument('--amplify', type=int, default=None, metavar='N',
                             help='Also blow the core instance up to about N vertices')
    behrend = commands.add_parser('behrend', parents=[common], help='Solution-free set')
    behrend.add_argument('--m', type=int, required=True, help='Range bound')
    behrend.add_argument('--t', type=int, default=3, help='Equation arity (default: 3)')
    behrend.add_argument('--verify', action='store_true', help='Run the exact oracle again')
    report = commands.add_parser('report', parents=[common], help='Size and count table')
    report.add_argument('input', help='Hypergraph file')
    report.add_argument('--n-grid', type=int, nargs='*', default=[], help='Part sizes')
    report.add_argument('--plot', default=None, help='Also save a plot to this path')
    return parser


def run(argv=None):
    """Parse arguments, run one subcommand and return its exit code."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)

    try:
        config = RunConfig.from_env(
            command=args.command,
            input_path=getattr(args, 'input', None),
            n=args.n,
            n_grid=tuple(getattr(args, 'n_grid', ())) or None,
            seed=args.seed,
            node_budget=args.node_budget,
            retry_cap=args.retry_cap,
            oracle_cap=args.oracle_cap,
            core_vertex_cap=args.core_vertex_cap,
            output_path=args.out,
            format=args.format or ('csv' if args.command == 'report' else None),
            deterministic_design=args.deterministic_design,
            workers=args.workers,
        )
        if args.command == 'behrend':
            return cmd_behrend(config, args.m, args.t, args.verify)
        if args.command == 'report':
            return cmd_report(config, args.plot)
        if args.command == 'construct':
            return cmd_construct(config, args.amplify)
        handlers = {'analyze': cmd_analyze, 'core': cmd_core, 'verify': cmd_verify}
        return handlers[args.command](config)
    except HyperremovalError as e:
        logger.error('%s: %s', type(e).__name__, e)
        return e.exit_code
    except OSError as e:
        logger.error('I/O error: %s', e)
        return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
