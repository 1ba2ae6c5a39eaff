"""
Copyright (c) 2024 Cisco and/or its affiliates.
This software is licensed to you under the terms of the Cisco Sample
Code License, Version 1.1 (the "License"). You may obtain a copy of the
License at
https://developer.cisco.com/docs/licenses
All use of the material herein must be in accordance with the terms of
the License. All rights not expressly granted by the License are
reserved. Unless required by applicable law or agreed to separately in
writing, software distributed under the License is distributed on an "AS
IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
or implied.
"""

__copyright__ = "Copyright (c) 2024 Cisco and/or its affiliates."
__license__ = "Cisco Sample Code License, Version 1.1"

import importlib
import pathlib
from typing import ClassVar, Dict, Optional

# Settings that map one-to-one onto global CLI flags
CLI_DEFAULTS = {
    "prime": "DEFAULT_PRIME",
    "truncation": "DEFAULT_TRUNCATION",
    "coeff": "DEFAULT_COEFF",
    "field_degree": "DEFAULT_FIELD_DEGREE",
    "output": "DEFAULT_OUTPUT",
    "seed": "DEFAULT_SEED",
}


class Config:
    """
    Engine defaults, read once from the `config.settings` module. Every upper-case value there becomes an
    attribute (c.DEFAULT_PRIME, c.LOG_TO_FILE, ...); command-line flags override them per invocation.
    """
    _instance: ClassVar[Optional['Config']] = None

    # PATHS
    DIR_PATH: ClassVar[pathlib.Path] = pathlib.Path(__file__).parents[2]
    SRC_PATH: ClassVar[pathlib.Path] = pathlib.Path(__file__).parents[1]
    GOLDEN_PATH: ClassVar[pathlib.Path] = DIR_PATH / 'tests' / 'golden'
    SETTINGS_MODULE: ClassVar[str] = "config.settings"

    APP_NAME: ClassVar[str] = 'Cartier-Raynaud Ring Engine'
    APP_VERSION: ClassVar[str] = '1.0.0'

    def __init__(self):
        self.settings_vars: Dict[str, object] = {}
        self.settings_module = importlib.import_module(self.SETTINGS_MODULE)
        for name in dir(self.settings_module):
            value = getattr(self.settings_module, name)
            if name.isupper() and not callable(value):
                setattr(self, name, value)
                self.settings_vars[name] = value

    def cli_defaults(self, **overrides) -> dict:
        """
        Values for the global CLI options: a flag left unset (None) falls back to its setting
        :param overrides: Flag values keyed like CLI_DEFAULTS
        :return: Merged values
        """
        merged = {field: self.settings_vars[setting] for field, setting in CLI_DEFAULTS.items()}
        merged.update({field: value for field, value in overrides.items() if value is not None})
        return merged

    @classmethod
    def get_instance(cls):
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    @classmethod
    def reload_config(cls):
        """
        Drop the cached instance and read the settings module again
        :return: Config instance
        """
        cls._instance = None
        importlib.reload(importlib.import_module(cls.SETTINGS_MODULE))
        return cls.get_instance()


c = Config.get_instance()  # Singleton instance of Config
