# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""The ``clrbm`` console script.

Flags left out on the command line are not passed on, so the defaults
of each command and the values of a ``--config`` file apply to them.
"""

import argparse
import logging
import sys
from typing import Optional, Sequence

from . import __description__, __version__, storage
from .commands.generate import Generate
from .commands.reproduce import Reproduce
from .commands.train import Train
from .exceptions import BaseError, ConfigError

log = logging.getLogger(__name__)

COMMANDS = {
    'generate': Generate,
    'train': Train,
    'reproduce': Reproduce,
}

# Options handled here rather than by the commands.
_GLOBAL_OPTIONS = {'command', 'config', 'verbose'}


class _Parser(argparse.ArgumentParser):
    """Argument parser raising ConfigError instead of exiting."""

    def error(self, message):
        raise ConfigError(message)


def _orders(text: str) -> list[int]:
    try:
        return [int(token) for token in text.split(',') if token.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f'expected comma-separated integers, got {text!r}') from exc


def _default(command, name) -> str:
    return f'(default: {COMMANDS[command].DEFAULT_OPTIONS[name]})'


def _add_sampling(parser, command):
    parser.add_argument('--n', type=int,
                        help='visible units ' + _default(command, 'n'))
    parser.add_argument('--m-generator', type=int,
                        help='hidden units of the generator RBM '
                        + _default(command, 'm_generator'))
    parser.add_argument('--generator-alpha', type=float,
                        help='visible bias of the generator '
                        + _default(command, 'generator_alpha'))
    parser.add_argument('--generator-beta', type=float,
                        help='hidden bias of the generator '
                        + _default(command, 'generator_beta'))
    parser.add_argument('--generator-weight', type=float,
                        help='coupling of the generator '
                        + _default(command, 'generator_weight'))
    parser.add_argument('--num-samples', type=int,
                        help='samples per dataset '
                        + _default(command, 'num_samples'))

    group = parser.add_mutually_exclusive_group()
    group.add_argument('--mcmc', dest='method', action='store_const',
                       const='mcmc',
                       help='sample by block Gibbs MCMC (default)')
    group.add_argument('--exact', dest='method', action='store_const',
                       const='exact',
                       help='sample i.i.d. from the enumerated marginal')

    parser.add_argument('--burn-in', type=int,
                        help='discarded Gibbs sweeps '
                        + _default(command, 'burn_in'))
    parser.add_argument('--thinning', type=int,
                        help='sweeps between kept samples '
                        + _default(command, 'thinning'))


def _add_training(parser, command):
    parser.add_argument('--m-learner', type=int,
                        help='hidden units of the learner '
                        + _default(command, 'm_learner'))
    parser.add_argument('--rate', type=float,
                        help='gradient ascent step size '
                        + _default(command, 'rate'))
    parser.add_argument('--iterations', type=int,
                        help='gradient ascent steps '
                        + _default(command, 'iterations'))
    parser.add_argument('--init-scale', type=float,
                        help='initial parameters are uniform on '
                        '[-scale, scale] ' + _default(command, 'init_scale'))
    parser.add_argument('--record-every', type=int,
                        help='iterations between trace rows '
                        + _default(command, 'record_every'))
    parser.add_argument('--enumeration-cap', type=int,
                        help='largest n for exact enumeration '
                        + _default(command, 'enumeration_cap'))


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser of the console script."""
    parser = _Parser(prog='clrbm', description=__description__)
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='log progress (-v) or details (-vv)')
    common.add_argument('--config', metavar='PATH',
                        help='JSON file of option values')
    common.add_argument('--out-dir', metavar='DIR',
                        help='output directory (default: .)')

    commands = parser.add_subparsers(dest='command', required=True,
                                     parser_class=_Parser)

    generate = commands.add_parser(
        'generate', parents=[common],
        help='sample a dataset from a constant-parameter RBM')
    _add_sampling(generate, 'generate')
    generate.add_argument('--seed', type=int,
                          help='sampler seed ' + _default('generate', 'seed'))
    generate.add_argument('-o', '--output', metavar='FILE',
                          help='dataset file name '
                          + _default('generate', 'output'))

    train = commands.add_parser(
        'train', parents=[common],
        help='fit an RBM to a dataset file')
    train.add_argument('data', nargs='?', metavar='DATA',
                       help='dataset CSV ' + _default('train', 'data'))
    train.add_argument('--n', type=int,
                       help='expected visible units (default: from data)')
    _add_training(train, 'train')
    method = train.add_mutually_exclusive_group()
    method.add_argument('--k', type=int,
                        help='block order ' + _default('train', 'k'))
    method.add_argument('--ml', action='store_true', default=None,
                        help='maximize the exact log-likelihood')
    train.add_argument('--seed', type=int,
                       help='initialization seed ' + _default('train', 'seed'))

    reproduce = commands.add_parser(
        'reproduce', parents=[common],
        help='compare CL orders with ML over repeated trials')
    _add_sampling(reproduce, 'reproduce')
    _add_training(reproduce, 'reproduce')
    reproduce.add_argument('--orders', type=_orders,
                           help='comma-separated block orders '
                           '(default: 1,2,3)')
    reproduce.add_argument('--trials', type=int,
                           help='independent trials '
                           + _default('reproduce', 'trials'))
    reproduce.add_argument('--master-seed', type=int,
                           help='seed all trial seeds derive from '
                           + _default('reproduce', 'master_seed'))
    reproduce.add_argument('--jobs', type=int,
                           help='worker processes (default: CPU count)')
    reproduce.add_argument('--shared-dataset', action='store_true',
                           default=None,
                           help='use one dataset for every trial')

    return parser


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG

    logging.basicConfig(
        level=level,
        format='%(asctime)s %(name)s %(levelname)s %(message)s',
    )


def run(argv: Optional[Sequence[str]] = None) -> list[str]:
    """Parse ``argv``, run the selected command and return written paths."""
    args = vars(build_parser().parse_args(argv))
    _configure_logging(args['verbose'])

    config = {}
    if args['config'] is not None:
        config = storage.load_run_config(args['config'])

    flags = {
        name: value for name, value in args.items()
        if value is not None and name not in _GLOBAL_OPTIONS
    }
    command = COMMANDS[args['command']](config, **flags)
    return command.run()


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the console script; returns the exit status."""
    try:
        for path in run(argv):
            print(path)
    except ConfigError as exc:
        print(f'clrbm: error: {exc}', file=sys.stderr)
        return 2
    except BaseError as exc:
        print(f'clrbm: error: {exc}', file=sys.stderr)
        return 1
    except OSError as exc:
        print(f'clrbm: error: {exc}', file=sys.stderr)
        return 1

    return 0
