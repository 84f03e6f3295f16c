# Command plugins: every module here registers its subcommands with
# @registry.command and is picked up by the CommandManager.
