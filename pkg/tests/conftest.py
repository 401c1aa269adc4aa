import functools
import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from realsph.catalog import CATALOG, build  # noqa: E402
from realsph.spherical import spherical_roots, standardize  # noqa: E402

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

NAMES = sorted(CATALOG)


@functools.lru_cache(maxsize=None)
def analyzed(name):
    """``(sp, srd)`` for a catalog entry, built once per session."""
    g, h, p = build(name)
    sp = standardize(g, h, p)
    return sp, spherical_roots(sp)


def wavefront_names():
    return [n for n in NAMES if CATALOG[n].expected["wavefront"]]
