"""HTTP election service: live elections over the tallying core.

Layering is strictly inward: the FastAPI layer (:mod:`.api`) calls the
domain flow (:mod:`.domain`), which uses the event store (:mod:`.store`),
the precondition enforcement (:mod:`.enforcement`) and the tallying core.
Inner layers never import outer ones.
"""

from .config import ServiceConfig
from .domain import ElectionService

__all__ = ["ElectionService", "ServiceConfig"]
