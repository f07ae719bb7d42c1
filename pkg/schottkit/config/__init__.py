from schottkit.config.schema import COMMANDS, ConfigError, load_scene, scene_json_schema
from schottkit.config.settings import Settings, get_settings, reload_settings

__all__ = [
    "COMMANDS",
    "ConfigError",
    "Settings",
    "get_settings",
    "load_scene",
    "reload_settings",
    "scene_json_schema",
]
