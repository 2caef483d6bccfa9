# File: sparse_grid/apps.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from django.apps import AppConfig

class SparseGridConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "sparse_grid"
    verbose_name = "Sparse grids"
