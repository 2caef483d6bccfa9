
# File: core/__init__.py
# Version: 1.0.0
# Author: vas
# Modified: 2025-11-28
