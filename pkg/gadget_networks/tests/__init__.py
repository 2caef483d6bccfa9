# File: gadget_networks/tests/__init__.py
# Version: 1.0.0
# Author: vas
# Modified: 2026-10-17
