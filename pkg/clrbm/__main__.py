# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""Allow running clrbm as ``python -m clrbm``."""

import sys

from .cli import main

if __name__ == '__main__':
    sys.exit(main())
