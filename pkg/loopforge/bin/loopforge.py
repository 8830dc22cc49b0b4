#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""loopforge executable"""

import argparse
import os
import sys
import loopforge

import warnings
warnings.filterwarnings(action='once')

# ignore some warnings thrown by other packages
warnings.filterwarnings("ignore",
                        "object name is not a valid Python identifier:")
warnings.filterwarnings("ignore", ".*load will be removed.*")
warnings.filterwarnings("ignore", ".*dump will be removed.*")

REPORTS = ('json', 'csv', 'xlsx')


def overrides_from_args(args, environ=None):
    """Nested configuration overrides from parsed arguments.

    The environment variable LOOPFORGE_SEED takes precedence over --seed.
    """

    if environ is None:
        environ = os.environ

    out = {}
    if args.config is not None:
        content = loopforge.fileio.load_config(args.config)
        out = loopforge.deep_update(out, content.get('defaults', {}))

    def put(keys, value):
        if value is None:
            return
        node = out
        for key in keys[:-1]:
            node = node.setdefault(key, {})
        node[keys[-1]] = value

    put(['truncation', 'max_mode'], args.modes)
    put(['truncation', 'dim'], args.dim)
    put(['truncation', 'tol'], args.tol)
    put(['fock', 'window'], args.fock_window)
    put(['fock', 'particle_cap'], args.particle_cap)
    put(['holonomy', 'integrator', 'steps'], args.steps)
    put(['seed'], args.seed)
    if args.timing:
        out['timing'] = True

    seed = environ.get('LOOPFORGE_SEED')
    if seed not in (None, ''):
        out['seed'] = int(seed)

    return out


def parser():
    """Argument parser of the `loopforge` command"""

    parser = argparse.ArgumentParser(
        description='Verification harness for polynomial loop groups '
        '(loopforge).')
    sub = parser.add_subparsers(dest='command')
    sub.required = True

    verify = sub.add_parser('verify', help='run a verification suite')
    verify.add_argument(
        'suite',
        help='suite name ({} or all)'.format(', '.join(loopforge.SUITES)))
    verify.add_argument('--modes', type=int, help='Fourier cutoff N')
    verify.add_argument('--dim', type=int, help='matrix size n')
    verify.add_argument('--fock-window', type=int, help='Fock mode window K')
    verify.add_argument('--particle-cap', type=int, help='particle cap P')
    verify.add_argument('--tol', type=float, help='default tolerance')
    verify.add_argument('--seed', type=int, help='master seed')
    verify.add_argument('--steps', type=int, help='RK4 integrator steps')
    verify.add_argument(
        '--report', choices=REPORTS, default=None, help='report format')
    verify.add_argument('--out', help='name of output file')
    verify.add_argument('--config', help='yaml configuration file')
    verify.add_argument(
        '--timing',
        action='store_true',
        default=False,
        help='record check runtimes')
    verify.add_argument(
        '-v', '--verbosity', action='count', default=0, help='verbosity level')
    verify.add_argument(
        '--parallel',
        action='store_true',
        default=False,
        help='run suites in parallel processes')

    return parser


def main(argv=None):
    """Main."""

    # parse arguments
    args = parser().parse_args(argv)
    verbosity = args.verbosity

    try:
        overrides = overrides_from_args(args)
        handler = loopforge.SuiteHandler(args.suite, overrides,
                                         verbosity=verbosity)
    except loopforge.UnknownSuite as err:
        print('loopforge: {}'.format(err), file=sys.stderr)
        return 2

    # output file; the extension of --out selects the format unless given
    frmt = args.report
    if args.out is not None:
        if frmt is not None and not args.out.endswith('.' + frmt):
            args.out = '{}.{}'.format(args.out, frmt)
        handler = loopforge.SuiteHandler.from_dict(
            {'loopforge': loopforge.__version__, 'defaults': overrides},
            suites=args.suite, name=args.out, verbosity=verbosity)
    elif frmt == 'xlsx':
        print('loopforge: xlsx reports need --out', file=sys.stderr)
        return 2

    # diagnostics go to stderr; stdout carries the report only
    if verbosity:
        print(80 * '#', file=sys.stderr)
        print('Running verification suite `{}`'.format(args.suite),
              file=sys.stderr)
        print(80 * '#', file=sys.stderr)

    if args.parallel:
        report = handler.run_parallel()
    else:
        report = handler.run_serial()

    if args.out is not None:
        handler.save(report)
        if verbosity:
            print('Report written to `{}`'.format(handler.output_name),
                  file=sys.stderr)
    elif frmt == 'csv':
        sys.stdout.write(report.to_frame().to_csv(index=False,
                                                  lineterminator='\n'))
    else:
        sys.stdout.write(loopforge.fileio.dumps(report.to_dict()))

    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
