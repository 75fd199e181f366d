import os
from pathlib import Path

BASE_DIR = Path(__file__).resolve().parent.parent
SECRET_KEY = os.environ.get("DJANGO_SECRET_KEY", "this-thing-requires-a-secret-key")
DEBUG = os.environ.get("DJANGO_DEBUG", "1") == "1"

ALLOWED_HOSTS = ["*"]

INSTALLED_APPS = [
    "django.contrib.contenttypes",
    "django.contrib.staticfiles",
    "rest_framework",
    "django.contrib.auth",  # DRF imports the auth models even with authentication switched off
    "heisenberg",
]

MIDDLEWARE = [
    "django.middleware.security.SecurityMiddleware",
    "django.middleware.common.CommonMiddleware",
]

ROOT_URLCONF = "config.urls"

WSGI_APPLICATION = "config.wsgi.application"

DATABASES = {
    "default": {
        "ENGINE": "django.db.backends.sqlite3",
        "NAME": BASE_DIR / "db.sqlite3",
    }
}

STATIC_URL = "static/"

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

REST_FRAMEWORK = {
    "DEFAULT_RENDERER_CLASSES": [
        "rest_framework.renderers.JSONRenderer",
    ],
    "DEFAULT_PARSER_CLASSES": [
        "rest_framework.parsers.JSONParser",
    ],
    "DEFAULT_AUTHENTICATION_CLASSES": [],
    "DEFAULT_PERMISSION_CLASSES": [],
    "UNAUTHENTICATED_USER": None,
}

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {"format": "{levelname} {name}: {message}", "style": "{"},
    },
    "handlers": {
        "console": {"class": "logging.StreamHandler", "formatter": "simple"},
    },
    "loggers": {
        "heisenberg": {
            "handlers": ["console"],
            "level": os.environ.get("HEISENBERG_LOG_LEVEL", "INFO"),
            "propagate": False,
        },
    },
}

# Bounds on the expensive exact computations
COMMUTANT_MAX_DIM = int(os.environ.get("HEISENBERG_COMMUTANT_MAX_DIM", 27))
POISSON_ORACLE_MAX_MN = int(os.environ.get("HEISENBERG_POISSON_ORACLE_MAX_MN", 15))
DKP_SWEEP_MAX_POINTS = int(os.environ.get("HEISENBERG_DKP_SWEEP_MAX_POINTS", 200000))
REWRITE_CACHE_SIZE = int(os.environ.get("HEISENBERG_REWRITE_CACHE_SIZE", 4096))
DEFAULT_COORD_RANGE = os.environ.get("HEISENBERG_COORD_RANGE", "-1,0,1,2")
