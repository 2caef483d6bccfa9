# File: gadget_networks/apps.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17

from django.apps import AppConfig

class GadgetNetworksConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "gadget_networks"
    verbose_name = "Gadget networks"
