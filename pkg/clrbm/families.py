# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Block families for composite likelihoods.

The systematic family F_k holds every k-subset of the visible units in
lexicographic order. Irregular families go through
:meth:`clrbm.models.BlockFamily.from_blocks`.
"""

import itertools
from math import comb

from .exceptions import OrderError, UnitIndexError
from .models import Block, BlockFamily


def _check_order(n: int, k: int):
    if not 1 <= k <= n:
        raise OrderError(k, n)


def family_weight(n: int, k: int) -> float:
    """Return the block weight of F_k, ``k!(n-k)!/n!``.

    >>> family_weight(4, 2)
    0.16666666666666666
    >>> family_weight(5, 5)
    1.0
    """
    _check_order(n, k)
    return 1.0 / comb(n, k)


def enumerate_family(n: int, k: int) -> BlockFamily:
    """Return F_k over ``n`` visible units.

    >>> [str(block) for block in enumerate_family(4, 3)]
    ['1,2,3', '1,2,4', '1,3,4', '2,3,4']
    """
    _check_order(n, k)
    blocks = tuple(Block(members)
                   for members in itertools.combinations(range(n), k))
    return BlockFamily(n, blocks, order=k)


def blocks_containing(family: BlockFamily, i: int) -> list[int]:
    """Positions of the blocks of ``family`` that contain unit ``i``.

    >>> blocks_containing(enumerate_family(4, 2), 0)
    [0, 1, 2]
    """
    if not 0 <= i < family.n:
        raise UnitIndexError(
            f'visible index {i} out of range for n={family.n}')
    return [position for position, block in enumerate(family.blocks)
            if i in block]


def dump_family(family: BlockFamily) -> str:
    """Render one block per line, 1-based and comma-separated."""
    return ''.join(f'{block}\n' for block in family.blocks)


def parse_family(text: str, n: int) -> BlockFamily:
    """Inverse of :func:`dump_family`; blank lines are skipped."""
    blocks = [Block.parse(line) for line in text.splitlines()
              if line.strip()]
    return BlockFamily.from_blocks(n, blocks)
