"""Positive allowable Lefschetz fibrations from knots and links in grid position."""

from importlib.resources import files

__version__ = "0.1.0"


def data_path(name: str) -> str:
    """Path of a bundled fixture (grids, open book page, move scripts)."""
    return str(files(__package__) / "data" / name)


from .grid import GridDiagram, GridError, parse_grid, legendrian_invariants  # noqa: E402
from .construct import PALF, ConstructionError, construct_palf, decide_lifts  # noqa: E402
from .fiber import RibbonFiber, Curve, from_boundary_word, canonical_word  # noqa: E402

__all__ = [
    "__version__", "data_path", "GridDiagram", "GridError", "parse_grid", "legendrian_invariants",
    "PALF", "ConstructionError", "construct_palf", "decide_lifts",
    "RibbonFiber", "Curve", "from_boundary_word", "canonical_word",
]
