# levyshuffle: error hierarchy
#
# Every error raised on purpose by the library derives from
# LevyShuffleError and carries the process exit code the command line
# reports for it.
#
# This file may be distributed under the terms of the GNU GPLv3 license.


class LevyShuffleError(Exception):
    exit_code = 1


class ConfigError(LevyShuffleError):
    def __init__(self, message, path=None):
        self.path = path
        if path:
            message = "%s: %s" % (path, message)
        LevyShuffleError.__init__(self, message)


class UnknownLetter(LevyShuffleError):
    def __init__(self, letter):
        self.letter = letter
        LevyShuffleError.__init__(self, "Unknown letter '%s'" % (letter,))


class InvalidSpec(LevyShuffleError):
    pass


class NoCoordinateForm(LevyShuffleError):
    pass


class MomentUnavailable(LevyShuffleError):
    pass


class NotPositiveSemidefinite(LevyShuffleError):
    pass


class NotInSpan(LevyShuffleError):
    pass


class TruncationExceeded(LevyShuffleError):
    pass


class InconsistentSpec(LevyShuffleError):
    pass


class UnsupportedSpec(LevyShuffleError):
    pass


class MissingGrid(LevyShuffleError):
    pass


class InvariantViolation(LevyShuffleError):
    exit_code = 2
