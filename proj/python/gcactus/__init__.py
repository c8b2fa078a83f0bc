"""Greedy embeddings of Christmas cactus graphs."""

from ._gcactus import *  # noqa: F401,F403
from ._gcactus import (  # noqa: F401
    EmbedError,
    Error,
    GeometryError,
    GraphError,
    ParseError,
)
