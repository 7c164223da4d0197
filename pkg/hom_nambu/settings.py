from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

SECRET_KEY = config('SECRET_KEY', default='django-insecure-hom-nambu-local-key')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = config('ALLOWED_HOSTS', default='localhost,127.0.0.1', cast=lambda v: [s.strip() for s in v.split(',')])

# Application definition
DJANGO_APPS = []

THIRD_PARTY_APPS = [
    'rest_framework',
]

LOCAL_APPS = [
    'core',
    'algebras',
    'axioms',
    'constructions',
    'search',
    'bundles',
]

INSTALLED_APPS = DJANGO_APPS + THIRD_PARTY_APPS + LOCAL_APPS

# No persistent storage: every object lives in bundle files.
DATABASES = {}

LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

# Serializers only; no API views are mounted.
REST_FRAMEWORK = {
    'DEFAULT_AUTHENTICATION_CLASSES': [],
    'DEFAULT_PERMISSION_CLASSES': [],
    'UNAUTHENTICATED_USER': None,
}

# Celery Configuration
CELERY_BROKER_URL = config('CELERY_BROKER_URL', default='redis://localhost:6379/0')
CELERY_RESULT_BACKEND = config('CELERY_RESULT_BACKEND', default='redis://localhost:6379/0')
CELERY_ACCEPT_CONTENT = ['json']
CELERY_TASK_SERIALIZER = 'json'
CELERY_RESULT_SERIALIZER = 'json'
CELERY_TIMEZONE = 'UTC'
CELERY_TASK_ALWAYS_EAGER = config('CELERY_TASK_ALWAYS_EAGER', default=True, cast=bool)
CELERY_TASK_EAGER_PROPAGATES = True

# Algebra limits
HOMALG_MAX_DIM = config('HOMALG_MAX_DIM', default=8, cast=int)
HOMALG_MAX_ARITY = config('HOMALG_MAX_ARITY', default=4, cast=int)
HOMALG_VIOLATION_LIMIT = config('HOMALG_VIOLATION_LIMIT', default=5, cast=int)
HOMALG_VERIFY_CONCLUSIONS = config('HOMALG_VERIFY_CONCLUSIONS', default=False, cast=bool)

# Finite-field search settings
HOMALG_SEARCH_BUDGET = config('HOMALG_SEARCH_BUDGET', default=10 ** 8, cast=int)
HOMALG_SEARCH_MAX_DIM = config('HOMALG_SEARCH_MAX_DIM', default=3, cast=int)
HOMALG_SEARCH_MAX_P = config('HOMALG_SEARCH_MAX_P', default=5, cast=int)

HOMALG_CATALOG_DIR = config('HOMALG_CATALOG_DIR', default=str(BASE_DIR / 'bundles' / 'catalog'))

# Logging
LOG_LEVEL = config('LOG_LEVEL', default='INFO')
LOG_FILE = config('LOG_FILE', default='hom_nambu.log')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '{levelname} {name} {message}',
            'style': '{',
        },
    },
    'handlers': {
        'file': {
            'level': LOG_LEVEL,
            'class': 'logging.FileHandler',
            'filename': LOG_FILE,
            'formatter': 'simple',
        },
        'console': {
            'level': 'WARNING',
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        'django': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': True,
        },
        'celery': {
            'handlers': ['file', 'console'],
            'level': 'INFO',
            'propagate': True,
        },
        **{
            app: {
                'handlers': ['file', 'console'],
                'level': LOG_LEVEL,
                'propagate': False,
            }
            for app in LOCAL_APPS
        },
    },
}
