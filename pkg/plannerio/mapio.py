#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

File formats of the planner

Map text file:
    line 1: "<width> <height>"
    then height lines of width characters, '.' = free, '#' = obstacle
    LF line endings, no trailing whitespace

Instance json: {"map": "<path or inline grid>", "start": [x,y], "goal": [x,y]}
A relative map path is resolved against the folder of the json file.

Dataset folder: "<size>x<size>_<index>.map" files plus manifest.json

Reports: csv and json tables, convergence curves (csv), pheromone heatmaps
(csv and ascii pgm) and path node lists (json). Numbers in csv files are
written with 6 significant digits.

"""

# Imports
import os
import json
import numpy as np
from gridworld import GridMap, Instance

MANIFEST_NAME = "manifest.json"
FREE, OBSTACLE = ".", "#"


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Exceptions

class MapParseError(ValueError):
    """ Malformed map text; 'line' is the 1-based line number of the problem """

    def __init__(self, message, line, source="<string>"):
        super(MapParseError, self).__init__("{}, line {}: {}".format(source, line, message))
        self.line = line
        self.source = source


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Maps

def format_map(gridmap):
    """ Map as text, ending with a newline """
    return "{} {}\n{}\n".format(gridmap.width, gridmap.height, str(gridmap))


def parse_map(text, source="<string>"):
    """ GridMap from map text; raises MapParseError naming the offending line """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    if len(lines) == 0:
        raise MapParseError("empty map file", 1, source)

    header = lines[0].split(" ")
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise MapParseError("header must be '<width> <height>', got '{}'".format(lines[0]), 1, source)
    width, height = int(header[0]), int(header[1])
    if width < 2 or height < 2:
        raise MapParseError("map must be at least 2x2 cells, got {}x{}".format(width, height), 1, source)
    if len(lines)-1 < height:
        raise MapParseError("expected {} map rows, found {}".format(height, len(lines)-1), len(lines)+1, source)
    if len(lines)-1 > height:
        raise MapParseError("expected {} map rows, found {}".format(height, len(lines)-1), height+2, source)

    cells = np.zeros((height,width), dtype=bool)
    for y,row in enumerate(lines[1:]):
        line_nr = y+2
        if len(row) != width:
            raise MapParseError("expected {} cells, found {}".format(width, len(row)), line_nr, source)
        for x,c in enumerate(row):
            if c == OBSTACLE:
                cells[y,x] = True
            elif c != FREE:
                raise MapParseError("invalid cell character '{}' at column {}".format(c, x+1), line_nr, source)
    return GridMap.from_array(cells)


def read_map(filename):
    with open(filename, "r", newline="") as f:
        return parse_map(f.read(), source=filename)


def write_map(gridmap, filename):
    with open(filename, "w", newline="\n") as f:
        f.write(format_map(gridmap))


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Instances

def read_instance(filename):
    """ Instance from json; the map entry is an inline grid (contains a
        newline) or a path relative to the json file """
    with open(filename, "r") as f:
        content = json.load(f)
    try:
        map_entry, start, goal = content["map"], content["start"], content["goal"]
    except KeyError as e:
        raise ValueError("Instance file {} misses the {} entry".format(filename, e))
    if "\n" in map_entry:
        gridmap = parse_map(map_entry, source=filename)
    else:
        if not os.path.isabs(map_entry):
            map_entry = os.path.join(os.path.dirname(os.path.abspath(filename)), map_entry)
        gridmap = read_map(map_entry)
    return Instance(gridmap, tuple(start), tuple(goal))


def write_instance(instance, filename, map_path=None):
    """ Writes the instance json, with the map inline unless map_path is given """
    content = { "map": format_map(instance.map) if map_path is None else map_path,
             "start": list(instance.start), "goal": list(instance.goal) }
    with open(filename, "w", newline="\n") as f:
        json.dump(content, f, indent=2)
        f.write("\n")


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Datasets

def map_filename(size, index):
    return "{}x{}_{}.map".format(size, size, index)


def dataset_dirname(size):
    """ Folder of the dataset of one map size below a gen-maps output folder """
    return "{}x{}".format(size, size)


def write_manifest(dataset_dir, size, seed, files):
    manifest = {"seed": int(seed), "size": int(size), "files": list(files)}
    with open(os.path.join(dataset_dir, MANIFEST_NAME), "w", newline="\n") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")
    return manifest


def read_manifest(dataset_dir):
    """ Returns (manifest dict, list of GridMaps in manifest order); all maps
        of a dataset must have the size the manifest names """
    manifest_file = os.path.join(dataset_dir, MANIFEST_NAME)
    with open(manifest_file, "r") as f:
        manifest = json.load(f)
    maps = [read_map(os.path.join(dataset_dir, name)) for name in manifest["files"]]
    size = manifest.get("size")
    for name,gridmap in zip(manifest["files"], maps):
        if size is None:
            size = gridmap.width
        if gridmap.shape != (size,size):
            raise ValueError("{}: dataset mixes map sizes, {} is {}x{} instead of {}x{}".format(
                manifest_file, name, gridmap.width, gridmap.height, size, size))
    return manifest, maps


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Reports

def write_report_csv(report, filename, include_timing=False):
    report.to_frame(include_timing).to_csv(filename, index=False, float_format="%.6g")


def write_report_json(report, filename, include_timing=False):
    with open(filename, "w", newline="\n") as f:
        json.dump(report.to_dict(include_timing), f, indent=2)
        f.write("\n")


def write_curves_csv(report, filename):
    report.curves_frame().to_csv(filename, index=False, float_format="%.6g")


def write_heatmap_csv(values, filename):
    """ height x width table of per-node values """
    np.savetxt(filename, np.asarray(values, dtype=float), fmt="%.6g", delimiter=",")


def write_heatmap_pgm(values, filename):
    """ Ascii (P2) grayscale image, linearly scaled so the maximum is 255 """
    values = np.asarray(values, dtype=float)
    vmax = float(values.max()) if values.size else 0.0
    scale = 255.0/vmax if vmax > 0 else 0.0
    pixels = np.clip(np.rint(values*scale), 0, 255).astype(int)
    with open(filename, "w", newline="\n") as f:
        f.write("P2\n")
        f.write("# linear scaling: gray = round(value * 255 / {:.6g})\n".format(vmax))
        f.write("{} {}\n255\n".format(values.shape[1], values.shape[0]))
        for row in pixels:
            f.write(" ".join(str(v) for v in row) + "\n")


def write_path_json(path, filename):
    with open(filename, "w", newline="\n") as f:
        json.dump({"nodes": [list(n) for n in path.nodes], "cost": path.cost, "turns": path.turns}, f, indent=2)
        f.write("\n")
