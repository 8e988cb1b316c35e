"""
Settings for rnc-fan.

Defaults come from config/settings.yaml. A few values can be overridden through the
environment (a .env file in the working directory is honoured):

- RNC_CONFIG_PATH: alternative settings file
- RNC_MAX_D: largest d the fan traversal accepts
- RNC_WORKERS: worker threads used by the fan traversal
"""

import logging
import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Optional

import yaml
from dotenv import load_dotenv

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / 'config' / 'settings.yaml'


class SettingsManager:
    def __init__(self, config_path: Optional[str] = None):
        load_dotenv()
        self.config_path = Path(config_path or os.getenv('RNC_CONFIG_PATH') or DEFAULT_CONFIG_PATH)
        self.settings = self.load_settings()

    def load_settings(self) -> dict:
        try:
            with open(self.config_path, 'r') as file:
                return yaml.safe_load(file) or {}
        except FileNotFoundError:
            logger.error(f"Settings file not found: {self.config_path}")
            raise

    def get(self, section: str, key: str, default: Any = None) -> Any:
        value = self.settings.get(section, {}).get(key)
        return default if value is None else value

    def _env_int(self, name: str, fallback: int) -> int:
        raw = os.getenv(name)
        if raw is None or raw.strip() == '':
            return fallback
        try:
            return int(raw)
        except ValueError:
            logger.error(f"Ignoring non-integer {name}={raw!r}")
            return fallback

    # hilbert
    @property
    def window_offset(self) -> int:
        return int(self.get('hilbert', 'window_offset', 6))

    @property
    def max_doublings(self) -> int:
        return int(self.get('hilbert', 'max_doublings', 10))

    @property
    def q1_extra_degrees(self) -> int:
        return int(self.get('hilbert', 'q1_extra_degrees', 3))

    # groebner
    @property
    def default_tiebreak(self) -> str:
        return str(self.get('groebner', 'default_tiebreak', 'lex'))

    @property
    def verify_closed_forms(self) -> bool:
        return bool(self.get('groebner', 'verify_closed_forms', True))

    def hilbert_check_degree(self, d: int) -> int:
        value = self.get('groebner', 'hilbert_check_degree')
        return 2 * d + 2 if value is None else int(value)

    # fan
    @property
    def max_traversal_d(self) -> int:
        return self._env_int('RNC_MAX_D', int(self.get('fan', 'max_traversal_d', 6)))

    @property
    def workers(self) -> int:
        return max(1, self._env_int('RNC_WORKERS', int(self.get('fan', 'workers', 1))))

    @property
    def flip_max_halvings(self) -> int:
        return int(self.get('fan', 'flip_max_halvings', 24))

    @property
    def fan_sample_size(self) -> int:
        return int(self.get('fan', 'sample_size', 200))

    # sampling
    @property
    def seed(self) -> int:
        return int(self.get('sampling', 'seed', 0))

    @property
    def max_entry(self) -> int:
        return int(self.get('sampling', 'max_entry', 30))

    def sample_count(self, name: str, default: int) -> int:
        return int(self.get('sampling', f'{name}_samples', default))


@lru_cache(maxsize=1)
def get_settings() -> SettingsManager:
    return SettingsManager()
