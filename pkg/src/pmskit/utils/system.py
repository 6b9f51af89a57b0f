"""System and environment helpers."""

import os
import platform
from typing import Any, Dict, Optional


def get_system_info() -> Dict[str, Any]:
    """Get system information recorded alongside benchmark timings.

    Returns:
        Dictionary with system information
    """
    return {
        'platform': platform.system(),
        'platform_release': platform.release(),
        'architecture': platform.machine(),
        'python_version': platform.python_version(),
        'python_implementation': platform.python_implementation(),
        'cpu_count': os.cpu_count() or 1,
    }


def resolve_workers(requested: Optional[int], configured: int) -> int:
    """Number of worker threads to use: the request, else config, capped by the CPU count."""
    workers = requested if requested is not None else configured
    return max(1, min(int(workers), os.cpu_count() or 1))
