import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Only used by Django internals; there is no web surface.
SECRET_KEY = os.getenv('SECRET_KEY', 'django-insecure-default-key-for-development')

DEBUG = os.getenv('DEBUG', 'False') == 'True'

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'core',
]

# Database (the analysis is in-memory; the test runner still expects one)
DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': BASE_DIR / 'db.sqlite3',
    }
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'


def _env_bool(name, default='False'):
    return os.getenv(name, default).strip().lower() in ('1', 'true', 'yes')


# Following-motif analysis defaults, consumed by the management commands
FOLLOW_MOTIF = {
    'WINDOW': int(os.getenv('FOLLOW_MOTIF_WINDOW', '300')),
    'PERCENTILE_GAP': float(os.getenv('FOLLOW_MOTIF_PERCENTILE_GAP', '0.01')),
    'TIMESTEP_GAP': float(os.getenv('FOLLOW_MOTIF_TIMESTEP_GAP', '37')),
    'SERIES_LENGTH': int(os.getenv('FOLLOW_MOTIF_SERIES_LENGTH', '2000')),
    'BLOCK_ROWS': int(os.getenv('FOLLOW_MOTIF_BLOCK_ROWS', '256')),
    'WORKERS': int(os.getenv('FOLLOW_MOTIF_WORKERS', '1')),
    'OUTPUT_DIR': os.getenv('FOLLOW_MOTIF_OUTPUT_DIR', str(BASE_DIR / 'output')),
    'OUTPUT_FORMAT': os.getenv('FOLLOW_MOTIF_OUTPUT_FORMAT', 'json'),
    'NOISE_SEED': int(os.getenv('FOLLOW_MOTIF_NOISE_SEED', '0')),
    'RUN_BENCHMARKS': _env_bool('FOLLOW_MOTIF_RUN_BENCHMARKS'),
}

# Logging configuration
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '{levelname} {asctime} {module} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'verbose',
        },
        'file': {
            'class': 'logging.FileHandler',
            'filename': os.getenv('FOLLOW_MOTIF_LOG_FILE', 'followmotif.log'),
            'formatter': 'verbose',
            'delay': True,
        },
    },
    'loggers': {
        '': {
            'handlers': ['console', 'file'],
            'level': os.getenv('LOG_LEVEL', 'INFO'),
            'propagate': True,
        },
    },
}
