"""
Configuration settings for pmskit
Exact-arithmetic toolkit for probabilistic metric spaces
"""

import logging
import os
from copy import deepcopy
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

# Application constants
APP_NAME = "pmskit"
VERSION = "0.3.0"
APP_DISPLAY_NAME = "pmskit"

# Environment variables
ENV_SEED = "PMSKIT_SEED"
ENV_DEBUG = "PMSKIT_DEBUG"
ENV_CONFIG = "PMSKIT_CONFIG"

# Exit statuses
EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

# Tags as they appear in files and on the command line
TNORM_TAGS = ("min", "product", "lukasiewicz")
TRIANGLE_KINDS = ("sup", "infdual")

# Packaged defaults
DEFAULTS_FILE = Path(__file__).parent / "defaults.yaml"

logger = logging.getLogger(__name__)

_settings_cache: Optional[Dict[str, Any]] = None


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    """Merge override into a copy of base, one nesting level at a time."""
    merged = deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _read_yaml(path: Path) -> Dict[str, Any]:
    with open(path, 'r', encoding='utf-8') as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"Configuration root must be a mapping: {path}")
    return data


def load_settings(reload: bool = False) -> Dict[str, Any]:
    """Load tunable defaults, applying the PMSKIT_CONFIG override file if set.

    Args:
        reload: Re-read the files instead of returning the cached copy

    Returns:
        Nested dictionary of settings
    """
    global _settings_cache
    if _settings_cache is not None and not reload:
        return _settings_cache

    settings = _read_yaml(DEFAULTS_FILE)

    override_path = os.environ.get(ENV_CONFIG)
    if override_path:
        try:
            settings = _merge(settings, _read_yaml(Path(override_path)))
        except (OSError, yaml.YAMLError, ValueError) as e:
            logger.warning(f"Ignoring config override {override_path}: {e}")

    seed = os.environ.get(ENV_SEED)
    if seed:
        try:
            settings['random']['seed'] = int(seed)
        except ValueError:
            logger.warning(f"Ignoring non-integer {ENV_SEED}={seed!r}")

    _settings_cache = settings
    return settings


def debug_enabled() -> bool:
    """Check the PMSKIT_DEBUG switch."""
    return os.environ.get(ENV_DEBUG, '').lower() in ('1', 'true', 'yes')
