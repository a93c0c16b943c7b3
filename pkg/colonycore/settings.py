#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Loads the planner settings file (a plain python file defining the
dictionaries 'colonyparams' and 'benchsettings')

"""

# Imports
import os


def default_settings_file():
    """ Path of default.plannersettings.py, shipped inside this package """
    self_path = os.path.dirname(os.path.realpath(__file__))
    return os.path.join( self_path, "default.plannersettings.py" )


def load_settings(settingsfile=None):
    """ Returns (colonyparams, benchsettings) from the settings file
        - settingsfile: Optional path, otherwise the default settings file is used
    """
    if settingsfile is None:
        settingsfile = default_settings_file()
    if not os.path.isfile(settingsfile):
        raise FileNotFoundError("Settings file not found: {}".format(settingsfile))
    settings = {}
    with open(settingsfile) as f:
        exec(f.read(), settings)
    return settings["colonyparams"], settings["benchsettings"]
