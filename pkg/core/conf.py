from django.conf import settings

DEFAULTS = {
    'HOMALG_MAX_DIM': 8,
    'HOMALG_MAX_ARITY': 4,
    'HOMALG_VIOLATION_LIMIT': 5,
    'HOMALG_VERIFY_CONCLUSIONS': False,
    'HOMALG_SEARCH_BUDGET': 10 ** 8,
    'HOMALG_SEARCH_MAX_DIM': 3,
    'HOMALG_SEARCH_MAX_P': 5,
}


def setting(name, default=None):
    """Read a project setting, falling back when Django is not configured"""
    if default is None:
        default = DEFAULTS.get(name)
    if not settings.configured:
        return default
    return getattr(settings, name, default)
