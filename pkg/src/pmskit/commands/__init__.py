from .banach_stone import RecoverCommand, TransportCommand
from .base import BaseCommand, Command, CommandResult
from .convolution import BenchCommand, ConvCommand, LevyCommand
from .maps import ExtendCommand, LipcheckCommand
from .units import UnitsCommand
from .validate import ValidateCommand

COMMANDS = [
    ValidateCommand(),
    ConvCommand(),
    LevyCommand(),
    LipcheckCommand(),
    ExtendCommand(),
    UnitsCommand(),
    TransportCommand(),
    RecoverCommand(),
    BenchCommand(),
]

__all__ = ["BaseCommand", "Command", "CommandResult", "COMMANDS"]
