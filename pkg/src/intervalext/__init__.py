"""Recognition and partial-representation extension of interval graphs."""

from .errors import *  # noqa: F401,F403
from .graph_core import ClosedInterval, Graph, load_graph

__version__ = "0.1.0"
