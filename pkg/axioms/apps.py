from django.apps import AppConfig


class AxiomsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'axioms'
    verbose_name = 'Axiom checkers'
