from ._backend import backend_name
from .engine import (
    CacheReport,
    Layout,
    PageCacheConfig,
    SimConfig,
    SimReport,
    simulate_collective,
    simulate_individual,
    simulate_page_cache,
)

__all__ = [
    "CacheReport",
    "Layout",
    "PageCacheConfig",
    "SimConfig",
    "SimReport",
    "backend_name",
    "simulate_collective",
    "simulate_individual",
    "simulate_page_cache",
]
