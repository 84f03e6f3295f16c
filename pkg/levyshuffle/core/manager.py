# levyshuffle: command manager
#
# Discovers the command plugins in levyshuffle.commands, builds the
# argparse front end from their registered CommandSpecs and dispatches a
# command line to the matching handler. Library errors become a one-line
# message and their exit code; anything unexpected is logged and reported
# as an internal error (exit code 2).
#
# This file may be distributed under the terms of the GNU GPLv3 license.

import argparse
import importlib
import json
import logging
import sys

from . import registry
from .alphabet import build_alphabet
from .config import load_config
from .errors import ConfigError, InvariantViolation, LevyShuffleError

COMMANDS_PACKAGE = "levyshuffle.commands"
INTERNAL_ERROR_EXIT = 2


class _ArgumentParser(argparse.ArgumentParser):
    # usage mistakes are validation errors, not argparse's exit status 2
    def error(self, message):
        raise ConfigError("%s (see '%s --help')" % (message, self.prog))


class CommandRequest:
    """What a command handler sees: parsed arguments, the loaded config,
    the alphabet built from it, and a way to respond."""

    def __init__(self, args, out=None):
        self.args = args
        self.out = out if out is not None else sys.stdout
        self._config = None
        self._alphabet = None

    @property
    def json(self):
        return getattr(self.args, "json", False)

    def get_config(self):
        if self._config is None:
            self._config = load_config(self.args.config)
        return self._config

    def get_alphabet(self):
        if self._alphabet is None:
            config = self.get_config()
            self._alphabet = build_alphabet(config.processes, config.max_grade)
        return self._alphabet

    def get_word(self, option):
        return self.get_alphabet().parse_word(getattr(self.args, option))

    def get_default(self, option):
        """Command line value of `option`, else the config default."""
        value = getattr(self.args, option, None)
        if value is not None:
            return value
        return getattr(self.get_config().defaults, option)

    def respond(self, text, payload):
        if self.json:
            self.out.write(json.dumps(payload, indent=2) + "\n")
        else:
            self.out.write(text + "\n")


class CommandManager:
    def __init__(self, package=COMMANDS_PACKAGE):
        self.package = package
        self.commands = {}
        self.commands_loaded = False

    def get_status(self):
        return {
            "commands_loaded": self.commands_loaded,
            "commands": sorted(self.commands),
        }

    def load_commands(self):
        # Imports every module of the commands package. Runs at most once.
        if self.commands_loaded:
            return
        self.commands_loaded = True
        for module_name in registry.iter_command_modules(self.package):
            try:
                self._load_module(module_name)
            except LevyShuffleError:
                logging.exception("Error loading command module '%s'", module_name)
                raise
            except Exception as e:
                logging.exception("Unhandled error in command module '%s'", module_name)
                raise InvariantViolation("Unhandled error in command module '%s': %s"
                                         % (module_name, e))

    def _load_module(self, module_name):
        mod = importlib.import_module(module_name)
        specs = registry.find_commands(mod)
        if not specs:
            raise InvariantViolation("Command module '%s' registers no commands"
                                     % (module_name,))
        for spec in specs:
            if spec.name in self.commands:
                raise InvariantViolation("Command '%s' registered twice" % (spec.name,))
            self.commands[spec.name] = spec
            logging.info("levyshuffle: Loaded command '%s' from %s",
                         spec.name, module_name)

    def build_parser(self):
        self.load_commands()
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--json", action="store_true",
                            help="emit machine-readable JSON")
        common.add_argument("-v", "--verbose", action="count", default=0,
                            help="log progress to stderr (-vv for debug)")
        parser = _ArgumentParser(prog="levyshuffle",
                                 description="Quasi-shuffle algebra of Levy processes")
        subparsers = parser.add_subparsers(dest="command", metavar="COMMAND",
                                           parser_class=_ArgumentParser)
        subparsers.required = True
        for name in sorted(self.commands):
            spec = self.commands[name]
            sub = subparsers.add_parser(name, help=spec.desc, description=spec.desc,
                                        parents=[common])
            for flags, kwargs in spec.arguments:
                sub.add_argument(*flags, **kwargs)
        return parser

    def run(self, argv, out=None):
        """Run one command line; returns the process exit code."""
        try:
            args = self.build_parser().parse_args(argv)
        except LevyShuffleError as e:
            sys.stderr.write("error: %s\n" % (e,))
            return e.exit_code
        _configure_logging(args.verbose)
        spec = self.commands[args.command]
        try:
            spec.handler(CommandRequest(args, out))
        except LevyShuffleError as e:
            logging.debug("levyshuffle: '%s' failed", args.command, exc_info=True)
            sys.stderr.write("error: %s\n" % (e,))
            return e.exit_code
        except Exception:
            logging.exception("Unhandled error in command '%s'", args.command)
            return INTERNAL_ERROR_EXIT
        return 0


def _configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s: %(message)s")
    logging.getLogger().setLevel(level)


def main(argv=None):
    sys.exit(CommandManager().run(sys.argv[1:] if argv is None else argv))
