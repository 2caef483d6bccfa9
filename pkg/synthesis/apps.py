# File: synthesis/apps.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from django.apps import AppConfig

class SynthesisConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "synthesis"
    verbose_name = "Sparse grid to CNN synthesis"
