#!/usr/bin/env python

import argparse
import logging
import sys

from surfaceverifier import __version__, DEFAULT_PMAX, DEFAULT_P2MAX, DEFAULT_ISOMETRY_BOUND, DEFAULT_HESSE_SAMPLES
from surfaceverifier.cli import ListAction, VerifierStreamHandler, get_coloring_func
from surfaceverifier.exceptions import CheckSelectionError, ArgumentError
from surfaceverifier.workbench import Workbench


def main(argv=None):
    class MyParser(argparse.ArgumentParser):
        def error(self, message):
            sys.stderr.write('error: {0}\n'.format(message))
            self.print_help()
            sys.exit(2)

    parser = MyParser(description='Recomputes the arithmetic and lattice claims about the elliptic modular surface of '
                                  'the commutator subgroup and the K3 surface it is a base change of.')

    # Special options
    parser.add_argument('--version', action='version', version=__version__, help='display version and exit')
    parser.add_argument('--list', action=ListAction, nargs=0,
                        help='list the registered checks and exit; give --pmax and --p2max first to list the '
                             'per-prime checks of that configuration')

    # Selection and output
    parser.add_argument('--check', default='*', metavar='GLOB',
                        help="run only the checks whose id matches the glob, e.g. 'S5.*' or 'LAT.prop10.p7' "
                             "(default: all)")
    parser.add_argument('--json', default=None, metavar='PATH',
                        help='also write the report as newline-delimited JSON to this path')
    parser.add_argument('--timings', action='store_true', default=False,
                        help='include wall times in the reports; reports are then no longer reproducible')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='enable verbose output')
    parser.add_argument('-c', '--color', action='store_true', default=False, help='force colorizing the output')
    parser.add_argument('--no-color', action='store_true', default=False, help='prevent colorizing the output')

    # Bounds
    parser.add_argument('--pmax', type=int, default=DEFAULT_PMAX,
                        help='largest prime of the per-prime checks (default: {0})'.format(DEFAULT_PMAX))
    parser.add_argument('--p2max', type=int, default=DEFAULT_P2MAX,
                        help='largest prime p whose surface is counted over F_p^2 (default: {0})'
                             .format(DEFAULT_P2MAX))
    parser.add_argument('--series-order', type=int, default=None,
                        help='truncation order of the eta-product expansions (default: 4 pmax + 16)')
    parser.add_argument('--threads', type=int, default=None,
                        help='number of checks run concurrently (default: number of CPUs)')
    parser.add_argument('--isometry-bound', type=int, default=DEFAULT_ISOMETRY_BOUND,
                        help='entry bound of the order-4 isometry search (default: {0})'
                             .format(DEFAULT_ISOMETRY_BOUND))
    parser.add_argument('--hesse-samples', type=int, default=DEFAULT_HESSE_SAMPLES,
                        help='number of parameters at which the Hesse pencil is reduced; must exceed 73 '
                             '(default: {0})'.format(DEFAULT_HESSE_SAMPLES))

    args = parser.parse_args(argv)
    col = get_coloring_func(color=args.color, no_color=args.no_color)

    # Set logging level for internal Python
    handler = VerifierStreamHandler(col, args.verbose)
    logger = logging.getLogger("surfaceverifier")
    logger.setLevel({0: logging.CRITICAL, 1: logging.WARNING, 2: logging.INFO}.get(args.verbose, logging.DEBUG))
    logger.addHandler(handler)

    try:
        workbench = Workbench(**vars(args))
        report = workbench.run(args.check)
    except (CheckSelectionError, ArgumentError) as e:
        parser.error(str(e))
    except KeyboardInterrupt:
        print('\n[+] User pressed ^C, aborting...')
        return 3
    except Exception as e:
        import traceback
        traceback.print_exc()
        print(col("[-] internal error: {0}".format(e), 'red'))
        return 3
    finally:
        logger.removeHandler(handler)

    print(report.as_text(col, args.timings))
    if args.json:
        report.write_json(args.json, args.timings)
        print("[+] JSON report written to {0}".format(args.json))
    return report.exit_code


if __name__ == '__main__':
    sys.exit(main())
