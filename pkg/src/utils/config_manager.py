"""
Configuration Manager for the stochastic subspace toolkit
Handles loading and managing configuration from YAML files
"""

import yaml
from typing import Dict, Any, Optional, Union
from pathlib import Path

from .errors import ConfigError


DEFAULT_CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "config.yaml"


class ConfigManager:
    """Manages application configuration"""

    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        self._explicit = config_path is not None
        self.config_path = Path(config_path) if config_path is not None else DEFAULT_CONFIG_PATH
        self._config: Optional[Dict[str, Any]] = None
        self.load_config()

    def load_config(self) -> None:
        """Load configuration from YAML file"""
        if not self.config_path.exists():
            if self._explicit:
                raise ConfigError(f"Configuration file not found: {self.config_path}")
            # library use without a checkout: every getter falls back to defaults
            self._config = {}
            return

        try:
            with open(self.config_path, 'r', encoding='utf-8') as file:
                loaded = yaml.safe_load(file)
        except yaml.YAMLError as e:
            raise ConfigError(f"Failed to load configuration: {e}")

        if loaded is None:
            loaded = {}
        if not isinstance(loaded, dict):
            raise ConfigError(f"Configuration root must be a mapping: {self.config_path}")
        self._config = loaded

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by key (supports dot notation)"""
        if self._config is None:
            return default

        keys = key.split('.')
        value = self._config

        try:
            for k in keys:
                value = value[k]
            return value
        except (KeyError, TypeError):
            return default

    def set(self, key: str, value: Any) -> None:
        """Set configuration value by key (supports dot notation)"""
        if self._config is None:
            self._config = {}
        keys = key.split('.')
        node = self._config
        for k in keys[:-1]:
            node = node.setdefault(k, {})
        node[keys[-1]] = value

    def as_dict(self) -> Dict[str, Any]:
        """Return a copy of the raw configuration mapping"""
        return yaml.safe_load(yaml.safe_dump(self._config or {}))

    def get_logging_config(self) -> Dict[str, Any]:
        """Get logging configuration"""
        return self.get('logging', {})

    def get_linalg_config(self) -> Dict[str, Any]:
        """Get linear-algebra tolerances"""
        return self.get('linalg', {})

    def get_sampling_config(self) -> Dict[str, Any]:
        """Get subspace sampling configuration"""
        return self.get('sampling', {})

    def get_ensemble_config(self) -> Dict[str, Any]:
        """Get ensemble generation configuration"""
        return self.get('ensemble', {})

    def get_training_config(self) -> Dict[str, Any]:
        """Get hyperparameter training configuration"""
        return self.get('training', {})

    def get_metrics_config(self) -> Dict[str, Any]:
        """Get UQ metrics configuration"""
        return self.get('metrics', {})

    def get_static_spec(self):
        """Get the static benchmark specification"""
        from ..benchmarks.specs import StaticBenchmarkSpec
        return StaticBenchmarkSpec(**self.get('static', {}))

    def get_dynamic_spec(self):
        """Get the dynamic benchmark specification"""
        from ..benchmarks.specs import DynamicBenchmarkSpec
        return DynamicBenchmarkSpec(**self.get('dynamic', {}))

    def get_out_dir(self) -> Path:
        """Get output directory for benchmark results"""
        return Path(self.get('output.out_dir', 'results'))

    def reload_config(self) -> None:
        """Reload configuration from file"""
        self.load_config()

    def use_file(self, config_path: Union[str, Path]) -> None:
        """Switch to another configuration file and load it"""
        self._explicit = True
        self.config_path = Path(config_path)
        self.load_config()

    def save(self, path: Union[str, Path]) -> None:
        """Write the current configuration as YAML"""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as file:
            yaml.safe_dump(self._config or {}, file, sort_keys=False)


# Global configuration instance
config = ConfigManager()
