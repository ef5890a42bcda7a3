#title           : cli.py
#description     : Command-line entry point: validate, classify, embed, verify, factor, geodesic, normexp, report
#author          : ContactGroup_R3 contributors
#date            : 20261019
#version         : 0.1
#usage           : contactgroup-r3 classify --preset heisenberg; contactgroup-r3 embed --preset sl2 --grid 5 --out sl2.csv
#notes           : exit code 0 when every check passes, 1 for a failed report, 2 for an error
#python_version  : >= 3.8
#==============================================================================

import argparse
import logging
import sys

from .core import embedding
from .core import pipeline_manager
from .core import settings
from .core.exceptions import ContactGroupError

logger = logging.getLogger(__name__)

COMMANDS = ('validate', 'classify', 'embed', 'verify', 'factor', 'geodesic', 'normexp', 'report')
EXIT_ERROR = 2


def parse_box(text):
    try:
        lo, hi = (float(part) for part in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError('box must be two numbers "a,b", got %r' % text)
    return lo, hi


def join_box(argv):
    """glue "--box a,b" into "--box=a,b" so a negative lower bound is not read as an option"""
    joined = []
    tokens = iter(argv)
    for token in tokens:
        if token == '--box':
            value = next(tokens, None)
            token = token if value is None else '--box=' + value
        joined.append(token)
    return joined


def build_parser():
    parser = argparse.ArgumentParser(
        prog='contactgroup-r3',
        description='Left-invariant contact structures on 3-dimensional Lie groups and their embedding in R^3')
    parser.add_argument('command', choices=COMMANDS)
    source = parser.add_mutually_exclusive_group()
    source.add_argument('--preset', help='name of a shipped preset')
    source.add_argument('--input', dest='inputfile', help='JSON file with labels, brackets, xi and alpha')
    parser.add_argument('--presets', default=settings.presetpath, help='preset catalog to use')
    parser.add_argument('--grid', type=int, default=settings.DEFAULT_GRID, help='points per axis')
    parser.add_argument('--box', type=parse_box, default=settings.DEFAULT_BOX, help='sampling interval "a,b"')
    parser.add_argument('--tol', type=float, default=settings.DEFAULT_TOL, help='alignment tolerance')
    parser.add_argument('--out', help='CSV file for embed samples')
    parser.add_argument('--seed', type=int, default=settings.DEFAULT_SEED)
    parser.add_argument('--model', choices=('heisenberg', 'sl2'), help='matrix model for factor and normexp')
    parser.add_argument('--matrix', help='group element as a JSON array, for factor')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('--verbose', '-v', action='store_true')
    verbosity.add_argument('--quiet', '-q', action='store_true')
    return parser


def run(argv=None, stdout=None):
    """
    run
    =====
    function to parse the arguments, run one command and print its JSON document

    Returns
    -----
    int : exit code
    """
    stdout = sys.stdout if stdout is None else stdout
    argv = join_box(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.ERROR if args.quiet else logging.WARNING
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    try:
        tolerances = settings.DEFAULTS.override(alignment=args.tol)
        manager = pipeline_manager.PipelineManager(args.presets, tolerances,
                                                   embedding.GridSpec(args.grid, args.box), args.seed)
        exit_code, text = manager.manage(args.command, preset=args.preset, inputfile=args.inputfile,
                                         out=args.out, tol=args.tol, model=args.model, matrix=args.matrix)
    except ContactGroupError as err:
        logger.error('%s: %s', type(err).__name__, err)
        return EXIT_ERROR
    stdout.write(text)
    return exit_code


def main():
    sys.exit(run())
