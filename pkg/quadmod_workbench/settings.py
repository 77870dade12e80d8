"""
Django settings for quadmod_workbench project.

Generated by 'django-admin startproject' using Django 4.2.6.

For more information on this file, see
https://docs.djangoproject.com/en/4.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path
import os
from django.core.exceptions import ImproperlyConfigured

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent


def env_int(name, default):
    """Positive integer from the environment, or the default when unset."""
    raw = os.environ.get(name)
    if raw is None or raw == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ImproperlyConfigured(f'{name} must be an integer, got {raw!r}')
    if value < 1:
        raise ImproperlyConfigured(f'{name} must be positive, got {value}')
    return value


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = 'django-insecure-quadmod-workbench-local-only'

DEBUG = True

ALLOWED_HOSTS = []


# Application definition
# The workbench has no web surface: only management commands and tests.

INSTALLED_APPS = [
    'quadmod',
]


# Database
# https://docs.djangoproject.com/en/4.2/ref/settings/#databases
# Nothing is persisted; the test runner still expects a default database.

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}


# Internationalization
# https://docs.djangoproject.com/en/4.2/topics/i18n/

LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_TZ = True

# Default primary key field type
# https://docs.djangoproject.com/en/4.2/ref/settings/#default-auto-field

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


# Workbench limits

# Largest total dimension of a truncated Fock module before TooLarge is raised
QUADMOD_MAX_DIM = env_int('QUADMOD_MAX_DIM', 20000)

# Depth used when --depth is omitted and M, N <= 3
QUADMOD_DEFAULT_DEPTH = 3

# Dimension budget of the automatic depth rule for larger M, N
QUADMOD_DIM_BUDGET = env_int('QUADMOD_DIM_BUDGET', 4000)

# Seeded Smith normal form property suite
QUADMOD_SNF_SAMPLES = 500
QUADMOD_SNF_MAX_DIM = 8
QUADMOD_SNF_ENTRY_BOUND = 9
QUADMOD_DEFAULT_SEED = 0


# Logging
# https://docs.djangoproject.com/en/4.2/topics/logging/

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'quadmod': {
            'handlers': ['console'],
            'level': os.environ.get('QUADMOD_LOG_LEVEL', 'INFO'),
            'propagate': False,
        },
    },
}
