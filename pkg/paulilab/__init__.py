"""paulilab: numerical laboratory for the self-generated field Pauli energy."""

from paulilab.core.config_locator import locate_global_config, locate_local_config_file
from paulilab.models.constants import CONFIG_FILENAME
from paulilab.models.settings import Settings, get_settings

__version__ = "0.1.0"

# Config file picked up when no --config is given (settings are loaded lazily)
config_filepath = locate_local_config_file(CONFIG_FILENAME) or locate_global_config(CONFIG_FILENAME)

__all__ = ["Settings", "get_settings", "config_filepath"]
