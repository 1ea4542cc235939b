"""
Django settings for the gonal project.

The project has no database, no HTTP surface and no templates: Django
provides the app registry, the management-command CLI, the test runner and
this settings module. Every numeric knob of the construction pipeline is
read from the environment (optionally through a .env file).
"""

import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = os.getenv('DJANGO_SECRET_KEY', 'gonal-insecure-local-key')

DEBUG = os.getenv('DEBUG', 'False').lower() == 'true'

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = [
    'curves',
]

MIDDLEWARE = []

# No persistence: certificates are plain JSON files.
DATABASES = {}

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


def _env_int(name, default):
    value = os.getenv(name)
    if value is None or value.strip() == '':
        return default
    return int(value, 0)


# Curve construction settings
GONAL_DEBUG_CHECKS = os.getenv('GONAL_DEBUG_CHECKS', str(DEBUG)).lower() == 'true'

# Largest set enumerated by brute force (roots, fibres, c_p tuple grids)
GONAL_ENUMERATION_CAP = _env_int('GONAL_ENUMERATION_CAP', 2 ** 24)

# Largest field that gets exp/log/Zech tables
GONAL_TABLE_CAP = _env_int('GONAL_TABLE_CAP', 2 ** 20)

# Largest residue ring F_q[t]/(P) that gets a full multiplication table
GONAL_RING_TABLE_CAP = _env_int('GONAL_RING_TABLE_CAP', 1024)

GONAL_DEFAULT_BUDGET = _env_int('GONAL_DEFAULT_BUDGET', 10000)
GONAL_DEFAULT_SEED = _env_int('GONAL_DEFAULT_SEED', 0)
GONAL_JOBS = _env_int('GONAL_JOBS', 1)
GONAL_TRUNCATION_DEGREE = _env_int('GONAL_TRUNCATION_DEGREE', 2)

# Optional on-disk cache of irreducible polynomial searches
GONAL_CACHE_DIR = os.getenv('GONAL_CACHE_DIR') or None

# Logging configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple' if not DEBUG else 'verbose',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': 'WARNING',
    },
    'loggers': {
        'django': {
            'handlers': ['console'],
            'level': 'WARNING',
            'propagate': False,
        },
        'curves': {
            'handlers': ['console'],
            'level': os.getenv('GONAL_LOG_LEVEL', 'WARNING'),
            'propagate': False,
        },
    },
}
