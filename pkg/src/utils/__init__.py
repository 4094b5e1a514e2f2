# Utils package

from .config import Settings, configure, get_settings, reset_settings, settings_from_env
from .logging_setup import setup_logging

__all__ = [
    'Settings',
    'configure',
    'get_settings',
    'reset_settings',
    'settings_from_env',
    'setup_logging',
]
