"""
Access to the GONAL_* settings with their documented defaults.
"""
from django.conf import settings

DEFAULTS = {
    'GONAL_DEBUG_CHECKS': False,
    'GONAL_ENUMERATION_CAP': 2 ** 24,
    'GONAL_TABLE_CAP': 2 ** 20,
    'GONAL_RING_TABLE_CAP': 1024,
    'GONAL_DEFAULT_BUDGET': 10000,
    'GONAL_DEFAULT_SEED': 0,
    'GONAL_JOBS': 1,
    'GONAL_TRUNCATION_DEGREE': 2,
    'GONAL_CACHE_DIR': None,
}


def gonal_setting(name: str):
    return getattr(settings, name, DEFAULTS[name])


def debug_checks() -> bool:
    return bool(gonal_setting('GONAL_DEBUG_CHECKS'))
