from django.apps import AppConfig


class WeingartenConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "weingarten"
    verbose_name = "Haar matrix-entry moments"
