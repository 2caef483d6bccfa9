"""
Django settings for the sgcnn project.

The project has no web surface: Django hosts the apps so their management
commands (rates, gadgets, sumlemma, compile, eval) and test packages are
discovered, and so configuration and logging live in one place.
"""
# File: config/settings.py
# Version: 1.0.3
# Author: vas
# Modified: 2026-10-17

import environ
from pathlib import Path


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent
# Environment variables
env = environ.Env(
    DEBUG=(bool, True)
)
environ.Env.read_env(BASE_DIR / '.env')

# sgcnn version
SGCNN_VERSION = "1.0.0"
SGCNN_CODENAME = "Korobov"
SGCNN_VERSION_FULL = f"v{SGCNN_VERSION} \"{SGCNN_CODENAME}\""
ENVIRONMENT = env('ENVIRONMENT', default='development')
DEBUG = env.bool('DEBUG', default=True)
ALLOWED_HOSTS = env.list('ALLOWED_HOSTS', default=[])

# Fail loudly if secrets not set outside development
if not DEBUG:
    SECRET_KEY = env('SECRET_KEY')  # No default - raises error if missing
else:
    SECRET_KEY = env('SECRET_KEY', default='django-insecure-sgcnn-desk-only-9q1v7x3k2m')

if DEBUG:
    # Development: logs in project directory
    LOGS_DIR = BASE_DIR / 'logs'
else:
    # Batch hosts: mounted log volume
    LOGS_DIR = Path(env('SGCNN_LOGS_DIR', default='/var/log/sgcnn'))

# Ensure directory exists
LOGS_DIR.mkdir(parents=True, exist_ok=True)

# Test-function registry and gadget suites
SGCNN_FIXTURES_DIR = BASE_DIR / 'config' / 'fixtures'

# --- desk budgets ------------------------------------------------------------
# Reduced symbol degree a single compiled filter may have
SGCNN_MAX_FILTER_DEGREE = env.int('SGCNN_MAX_FILTER_DEGREE', default=64)
# Per-direction sparse-grid level cap (dyadic coordinates stay exact)
SGCNN_MAX_LEVEL = env.int('SGCNN_MAX_LEVEL', default=30)
# d*m*N cap for synthesize
SGCNN_MAX_TERMS = env.int('SGCNN_MAX_TERMS', default=4096)
# Hidden width cap for any built network
SGCNN_MAX_WIDTH = env.int('SGCNN_MAX_WIDTH', default=200_000)

# --- numerics ----------------------------------------------------------------
SGCNN_SEED = env.int('SGCNN_SEED', default=20240607)
SGCNN_ZERO_THRESHOLD = env.float('SGCNN_ZERO_THRESHOLD', default=1e-13)
SGCNN_QUAD_RTOL = env.float('SGCNN_QUAD_RTOL', default=1e-9)
SGCNN_QUAD_MAX_POINTS = env.int('SGCNN_QUAD_MAX_POINTS', default=256)
SGCNN_FACTOR_RTOL = env.float('SGCNN_FACTOR_RTOL', default=1e-8)
# Smallest kill bias magnitude for gadget lanes that are provably zero
SGCNN_KILL_FLOOR = env.float('SGCNN_KILL_FLOOR', default=2.0 ** -20)
SGCNN_LP_SAMPLES = env.int('SGCNN_LP_SAMPLES', default=10_000)
SGCNN_HALTON_POINTS = env.int('SGCNN_HALTON_POINTS', default=100_000)
SGCNN_SUMLEMMA_CAP = env.int('SGCNN_SUMLEMMA_CAP', default=40)
SGCNN_VECTORPROD_GAP = env.int('SGCNN_VECTORPROD_GAP', default=57)

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {process:d} {thread:d} {message}',
            'style': '{',
        },
        'simple': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        # Console output (warnings and up; commands print their own summaries)
        'console': {
            'level': env('SGCNN_CONSOLE_LEVEL', default='WARNING'),
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },

        # Sparse grids, hierarchization, quadrature
        'file_sparse_grid': {
            'level': 'INFO',
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': LOGS_DIR / 'sparse_grid.log',
            'maxBytes': 10 * 1024 * 1024,  # 10MB
            'backupCount': 5,
            'formatter': 'verbose',
        },

        # Network construction: cnn core, compiler, gadgets, synthesis
        'file_networks': {
            'level': 'INFO',
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': LOGS_DIR / 'networks.log',
            'maxBytes': 10 * 1024 * 1024,  # 10MB
            'backupCount': 5,
            'formatter': 'verbose',
        },

        # Verification runs
        'file_verify': {
            'level': 'INFO',
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': LOGS_DIR / 'verify.log',
            'maxBytes': 10 * 1024 * 1024,  # 10MB
            'backupCount': 5,
            'formatter': 'verbose',
        },

        # Errors and exceptions
        'file_errors': {
            'level': 'ERROR',
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': LOGS_DIR / 'errors.log',
            'maxBytes': 10 * 1024 * 1024,  # 10MB
            'backupCount': 10,  # Keep more error logs
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['console', 'file_errors'],
            'level': 'WARNING',
            'propagate': False,
        },
        'sgcnn.sparse_grid': {
            'handlers': ['console', 'file_sparse_grid', 'file_errors'],
            'level': 'INFO',
            'propagate': False,
        },
        'sgcnn.cnn': {
            'handlers': ['console', 'file_networks', 'file_errors'],
            'level': 'INFO',
            'propagate': False,
        },
        'sgcnn.compiler': {
            'handlers': ['console', 'file_networks', 'file_errors'],
            'level': 'INFO',
            'propagate': False,
        },
        'sgcnn.gadgets': {
            'handlers': ['console', 'file_networks', 'file_errors'],
            'level': 'INFO',
            'propagate': False,
        },
        'sgcnn.synthesis': {
            'handlers': ['console', 'file_networks', 'file_errors'],
            'level': 'INFO',
            'propagate': False,
        },
        'sgcnn.verify': {
            'handlers': ['console', 'file_verify', 'file_errors'],
            'level': 'INFO',
            'propagate': False,
        },
    },
}

# Application definition

INSTALLED_APPS = [
    'core',
    'sparse_grid',
    'cnn_core',
    'shallow_compiler',
    'gadget_networks',
    'synthesis',
    'verify',
]

MIDDLEWARE = []

ROOT_URLCONF = None

# Database
# Only the test runner touches it; nothing is persisted.
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': env('SQLITE_PATH', default=str(BASE_DIR / 'db.sqlite3')),
    }
}

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

USE_TZ = True
TIME_ZONE = 'UTC'
