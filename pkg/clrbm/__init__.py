# This file is part of the clrbm project.
#
# Copyright (C) 2023 The clrbm authors
#
# For the full copyright and license information, please view
# the LICENSE file that was distributed with this source code.

"""The top-level module for clrbm.

This module tracks the version of the package as well as the base
package info used by various functions within the package. The
package implements maximum composite likelihood estimation for binary
restricted Boltzmann machines together with an exact brute-force
oracle for small models.

"""

__copyright__ = 'Copyright (C) 2023 The clrbm authors'
__version__ = '1.0.0'
__license__ = 'MIT'
__author__ = 'The clrbm authors'
__author_email__ = 'clrbm@users.noreply.github.com'
__url__ = 'https://github.com/clrbm/clrbm'
__description__ = 'Composite likelihood estimation for binary RBMs'
