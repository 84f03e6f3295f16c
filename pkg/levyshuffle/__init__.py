# levyshuffle: quasi-shuffle algebra of Levy processes
#
# This file may be distributed under the terms of the GNU GPLv3 license.

__version__ = "0.1.0"
