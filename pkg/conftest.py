"""pytest wiring: configure Django before the app test modules import it."""
import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
django.setup()
