"""Message passing on the {7,3} heptagrid.

Tiles are written "sector:fibword", the central tile "0:1". Routes are
lists of (entry side, exit side) pairs.
"""

from ._core import (
    RunReport,
    SimConfig,
    Space,
    decode,
    encode,
    execute,
    fib,
    leftmost,
    neighbors,
    pathroot,
    pred,
    route_text,
    route_tiles,
    shortest,
    succ,
)

__all__ = [
    "RunReport",
    "SimConfig",
    "Space",
    "decode",
    "encode",
    "execute",
    "fib",
    "leftmost",
    "neighbors",
    "pathroot",
    "pred",
    "route_text",
    "route_tiles",
    "run",
    "shortest",
    "succ",
]


def run(**options) -> RunReport:
    """Runs a simulation; keyword arguments set SimConfig fields."""
    config = SimConfig()
    for name, value in options.items():
        if not hasattr(config, name):
            raise TypeError(f"unknown option {name!r}")
        setattr(config, name, value)
    config.validate()
    return execute(config)
