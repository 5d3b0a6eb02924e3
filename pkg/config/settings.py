from pathlib import Path

import environ

BASE_DIR = Path(__file__).resolve(strict=True).parent.parent
env = environ.Env()
READ_DOT_ENV_FILE = env.bool("DJANGO_READ_DOT_ENV_FILE", default=True)
if READ_DOT_ENV_FILE:
    # OS environment variables take precedence over variables from .env
    env.read_env(str(BASE_DIR / ".env"))

env = environ.FileAwareEnv(
    DEBUG=(bool, False),
)

# GENERAL
# ------------------------------------------------------------------------------

DEBUG = env.bool("DEBUG", default=False)

# Nothing is served; the key only satisfies Django's startup checks.
SECRET_KEY = env(
    "DJANGO_SECRET_KEY",
    default="django-insecure-orthomoments-local-only",
)

TIME_ZONE = "UTC"
LANGUAGE_CODE = "en-us"
USE_I18N = False
USE_TZ = True

INSTALLED_APPS = [
    "combinat",
    "tensors",
    "invariants",
    "moments",
    "weingarten",
    "montecarlo",
    "verification",
    "rest_framework",
]

# No models anywhere in the project.
DATABASES = {}

DEFAULT_AUTO_FIELD = "django.db.models.BigAutoField"

REST_FRAMEWORK = {
    "UNAUTHENTICATED_USER": None,
    "COMPACT_JSON": True,
}

# Error logging
# Diagnostics go to stderr so that command output on stdout stays pure JSON.
LOG_LEVEL = env("LOG_LEVEL", default="INFO")
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "%(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "level": "DEBUG",
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        "": {
            "handlers": ["console"],
            "level": LOG_LEVEL,
        },
    },
}

# ENUMERATION AND DENSE LIMITS
# ------------------------------------------------------------------------------

# Largest k accepted by pairing enumeration; (2k-1)!! pairings are produced.
ORTHO_MAX_PAIRING_K = env.int("ORTHO_MAX_PAIRING_K", default=8)
# Largest n**m accepted for a dense tensor.
ORTHO_DENSE_ENTRY_CAP = env.int("ORTHO_DENSE_ENTRY_CAP", default=10_000_000)

# MONTE CARLO
# ------------------------------------------------------------------------------

ORTHO_MC_SEED = env.int("ORTHO_MC_SEED", default=42)
ORTHO_MC_SAMPLES = env.int("ORTHO_MC_SAMPLES", default=1_000_000)
ORTHO_MC_WORKERS = env.int("ORTHO_MC_WORKERS", default=1)
ORTHO_MC_BATCH_SIZE = env.int("ORTHO_MC_BATCH_SIZE", default=20_000)
ORTHO_ACCEPT_SIGMAS = env.float("ORTHO_ACCEPT_SIGMAS", default=4.0)
ORTHO_ARBITRATE_SIGMAS = env.float("ORTHO_ARBITRATE_SIGMAS", default=6.0)
