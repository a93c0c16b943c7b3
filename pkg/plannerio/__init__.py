#!/usr/bin/env python3
# -*- coding: utf-8 -*-

__version__ = "0.1.0"

from .mapio import MapParseError, MANIFEST_NAME
from .mapio import format_map, parse_map, read_map, write_map, read_instance, write_instance
from .mapio import map_filename, dataset_dirname, write_manifest, read_manifest
from .mapio import write_report_csv, write_report_json, write_curves_csv
from .mapio import write_heatmap_csv, write_heatmap_pgm, write_path_json
