"""
Configuration module for pmskit
"""

from .settings import APP_NAME, VERSION, debug_enabled, load_settings

__all__ = ["APP_NAME", "VERSION", "debug_enabled", "load_settings"]
