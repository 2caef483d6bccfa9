# File: cnn_core/apps.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from django.apps import AppConfig

class CnnCoreConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "cnn_core"
    verbose_name = "CNN core"
