# File: shallow_compiler/apps.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from django.apps import AppConfig

class ShallowCompilerConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "shallow_compiler"
    verbose_name = "Shallow-to-deep compiler"
