# File: core/utils/__init__.py
# Version: 1.0.1
# Author: vas
# Modified: 2026-10-17
