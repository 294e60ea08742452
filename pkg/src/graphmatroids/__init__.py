"""Count matroids, cofactor ranks, matroid union and graph reconstruction from matroids."""

__version__ = "0.1.0"

from .count import CountParams, CoverCertificate  # noqa: E402
from .graph import MultiGraph, Orientation, isomorphic, read_graph, write_graph  # noqa: E402
from .matroid import RankOracle, Separation  # noqa: E402

__all__ = [
    "CountParams",
    "CoverCertificate",
    "MultiGraph",
    "Orientation",
    "RankOracle",
    "Separation",
    "isomorphic",
    "read_graph",
    "write_graph",
    "__version__",
]
