from django.apps import AppConfig


class CombinatConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "combinat"
    verbose_name = "Pairings and set partitions"
