"""
Command implementations for skewsq.

Each command wires a reader, parsers, the numerical core, and a formatter
together behind one CLI subcommand.
"""

from skewsq.commands.approx import ApproxCommand
from skewsq.commands.bounds import BoundsCommand
from skewsq.commands.compare import CompareCommand
from skewsq.commands.estimate import EstimateCommand
from skewsq.commands.simulate import SimulateCommand

__all__ = [
    "ApproxCommand",
    "BoundsCommand",
    "CompareCommand",
    "EstimateCommand",
    "SimulateCommand",
]
