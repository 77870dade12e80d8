from django.apps import AppConfig


class QuadmodConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'quadmod'
    verbose_name = 'Quad-module workbench'
