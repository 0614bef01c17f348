from knapsackga.commands.base_command import BaseCommand
from knapsackga.core.exceptions import CommandNotFoundError
from knapsackga.core.logging import logger


class CommandRegistry:
    """Manages the registration and retrieval of command line subcommands."""

    def __init__(self):
        self._commands: dict[str, BaseCommand] = {}

    def register_command(self, name: str, command: BaseCommand):
        if name in self._commands:
            logger.debug(f"Command {name} already registered, replacing it")
        self._commands[name] = command

    def get_command_names(self) -> list[str]:
        return list(self._commands)

    def has_command(self, name: str) -> bool:
        return name in self._commands

    def get_command(self, name: str) -> BaseCommand:
        if name not in self._commands:
            raise CommandNotFoundError(name)
        return self._commands[name]


# Global instance of CommandRegistry
_global_command_registry = CommandRegistry()


def get_command_registry() -> CommandRegistry:
    """Returns the global CommandRegistry instance."""
    return _global_command_registry


def register_command(name: str):
    """
    Decorator for automatic command registration.
    Example:
        @register_command("oracle")
        class OracleCommand(BaseCommand):
            ...
    """

    def decorator(cls):
        if not hasattr(cls, "help"):
            raise ValueError(
                f"Command {cls.__name__} must define a 'help' class variable"
            )
        get_command_registry().register_command(name, cls())
        return cls

    return decorator
