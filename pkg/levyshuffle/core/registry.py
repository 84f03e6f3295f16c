# levyshuffle: decorator registry for command plugins
#
# Command modules mark their handlers with @command(...). The decorator
# stores a CommandSpec in decorator data attached to the unwrapped
# function; find_commands() collects them from a module's members and
# iter_command_modules() walks a package for plugin modules.
#
# This file may be distributed under the terms of the GNU GPLv3 license.

import collections
import importlib
import pkgutil
import types

# Attribute for the decorator data.
_DECORATOR_DATA = '_levyshuffle_decorator_data'


class DecoratorData(object):
    """Decorator data.

    Attributes
    ----------
    commands : list of CommandSpec
        Commands created through the decorators.
    """

    def __init__(self):
        self.commands = []


class CommandSpec(object):
    """Everything the manager needs to expose one subcommand.

    Attributes
    ----------
    name : str
        Subcommand name on the command line.
    handler : callable
        Called with a CommandRequest.
    desc : str or None
        One-line help.
    arguments : tuple of (flags, kwargs)
        argparse arguments, built with argument().
    """

    def __init__(self, name, handler, desc=None, arguments=()):
        self.name = name
        self.handler = handler
        self.desc = desc
        self.arguments = tuple(arguments)

    def __repr__(self):
        return ('{}(name={!r}, handler={!r})'
                .format(type(self).__name__, self.name, self.handler))

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return self.__dict__ == other.__dict__
        return NotImplemented


def argument(*flags, **kwargs):
    """Describe one argparse argument of a command."""
    return (flags, kwargs)


def command(name=None, desc=None, arguments=()):
    """Decorator registering the wrapped function as a subcommand."""
    def decorator(wrapped):
        base = _get_base(wrapped)
        name_ = base.__name__ if name is None else name
        spec = CommandSpec(name_, wrapped, desc, arguments)
        data = get_decorator_data(base, set_default=True)
        data.commands.append(spec)
        return wrapped
    return decorator


def get_decorator_data(obj, set_default=False):
    """Retrieve any decorator data from an object."""
    data = getattr(obj, _DECORATOR_DATA, None)
    if data is None and set_default:
        data = DecoratorData()
        setattr(obj, _DECORATOR_DATA, data)
    return data


def find_commands(module):
    """Find all the commands created through decorators in a module."""
    out = []
    for name, value in sorted(vars(module).items()):
        if isinstance(value, types.ModuleType) or name.startswith('__'):
            continue
        base = _get_base(value)
        if getattr(base, '__module__', None) != module.__name__:
            continue
        data = get_decorator_data(base)
        if data is not None:
            out.extend(data.commands)
    return out


def iter_command_modules(package):
    """Iterate over the names of the (non-package) modules below a package."""
    if isinstance(package, str):
        package = importlib.import_module(package)
    stack = collections.deque((package,))
    while stack:
        package = stack.popleft()
        for path in getattr(package, '__path__', []):
            for _, name, is_package in pkgutil.iter_modules([path]):
                module_name = '{}.{}'.format(package.__name__, name)
                if is_package:
                    stack.append(importlib.import_module(module_name))
                else:
                    yield module_name


def _get_base(obj):
    """Unwrap decorators to retrieve the base object."""
    while True:
        if hasattr(obj, '__func__'):
            obj = obj.__func__
            continue
        if isinstance(obj, property):
            obj = obj.fget
            continue
        return obj
