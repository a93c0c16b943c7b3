#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""

Command line interface of the grid path planner

    planner gen-maps --size 10 15 20 --seed 0 --out maps
    planner solve --map maps/10x10/10x10_3.map --start 0,0 --goal 9,9 --algo pfaco-30-20
    planner export-pheromone --instance inst.json --algo pfaco --stage initial --out tau0.csv
    planner bench --dataset maps/10x10 --configs astar,as-15-10,pfaco-15-10 --instances 10 --out results

Exit codes: 0 success, 1 usage or validation error, 2 no path or timeout,
3 file input/output error

"""

# Imports
import os
import sys
import argparse
from gridworld import Instance, generate_dataset, ctrap_instance, MIN_DATASET_SIZE
from searchoracle import NoPathError
from colonycore import initial_field, run_colony, load_settings
from benchharness import parse_label, run_benchmark, run_instance_study, run_job
from . import mapio

EXIT_OK, EXIT_USAGE, EXIT_NOPATH, EXIT_IO = 0, 1, 2, 3


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Arguments

class UsageError(ValueError):
    pass


class PlannerArgumentParser(argparse.ArgumentParser):
    """ Raises UsageError instead of exiting, so main() owns the exit codes """

    def error(self, message):
        raise UsageError(message)


def node_arg(text):
    """ "x,y" -> (x, y) """
    try:
        x, y = [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("node must be given as x,y, got '{}'".format(text))
    return (x, y)


def _add_algo_args(p, default_algo):
    p.add_argument('--algo', type=str, default=default_algo, help='astar, dijkstra, a colony name (as, eliteas, mmas, pfaco, pfaco_noadpi, pfaco_nopsprs, pfaco_noltos) or a label name-ants-iterations (default: %(default)s)')
    p.add_argument('--ants', type=int, default=None, help='number of ants M, when --algo is a plain name (default 30)')
    p.add_argument('--iters', type=int, default=None, help='number of iterations K, when --algo is a plain name (default 20)')
    p.add_argument('--alpha', type=float, default=None, help='pheromone weight')
    p.add_argument('--beta', type=float, default=None, help='heuristic weight')
    p.add_argument('--rho', type=float, default=None, help='evaporation rate, 0 < rho < 1')
    p.add_argument('--q', type=float, default=None, help='deposit constant Q')
    p.add_argument('--timeout-s', dest='timeout_s', type=float, default=None, help='wall time cut-off per run in seconds')


def _add_instance_args(p):
    p.add_argument('--map', type=str, default=None, help='map text file')
    p.add_argument('--start', type=node_arg, default=None, help='start node x,y')
    p.add_argument('--goal', type=node_arg, default=None, help='goal node x,y')
    p.add_argument('--instance', type=str, default=None, help='instance json file (instead of --map/--start/--goal)')


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--settings', type=str, default=None, help='settings file (default: colonycore/default.plannersettings.py)')
    common.add_argument('--seed', type=int, default=0, help='master random seed (default: %(default)s)')
    common.add_argument('-v', '--verbose', action="store_true", default=False, help='show progress bars')
    parser = PlannerArgumentParser( prog="planner", description="Ant colony path planning on grid maps: dataset generation, single solves, pheromone export and benchmarks." )
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    p = sub.add_parser('gen-maps', parents=[common], help='generate map datasets')
    p.add_argument('--size', type=int, nargs="+", default=[10,15,20], help='map size(s) in cells, one dataset folder each (default: 10 15 20)')
    p.add_argument('--out', type=str, required=True, help='output folder')

    p = sub.add_parser('solve', parents=[common], help='solve one instance')
    _add_instance_args(p)
    _add_algo_args(p, "astar")
    p.add_argument('--out', type=str, default=None, help='write the path node list to this json file')

    p = sub.add_parser('export-pheromone', parents=[common], help='export the initial or final pheromone field as heatmap')
    _add_instance_args(p)
    _add_algo_args(p, "pfaco")
    p.add_argument('--dump-pheromone', '--stage', dest='stage', choices=("initial","final"), default="initial", help='field to export (default: %(default)s)')
    p.add_argument('--out', type=str, required=True, help='heatmap csv file; a .pgm image is written next to it')

    p = sub.add_parser('bench', parents=[common], help='benchmark algorithm configurations')
    p.add_argument('--dataset', type=str, default=None, help='dataset folder of one map size with manifest.json, e.g. maps/10x10')
    p.add_argument('--ctrap', action="store_true", default=False, help='repeatability study on the C-trap instance instead of a dataset')
    p.add_argument('--size', type=int, default=10, help='C-trap map size (default: %(default)s)')
    p.add_argument('--configs', type=str, required=True, help='comma separated labels, e.g. astar,as-15-10,pfaco-15-10')
    p.add_argument('--instances', type=int, default=None, help='number of random instances (default from settings)')
    p.add_argument('--repeats', type=int, default=None, help='seeds per instance (default from settings)')
    p.add_argument('--timeout-s', dest='timeout_s', type=float, default=None, help='wall time cut-off per run in seconds')
    p.add_argument('--format', choices=("csv","json"), default="csv", help='report file format (default: %(default)s)')
    p.add_argument('--timing', action="store_true", default=False, help='include timing columns in report files')
    p.add_argument('--out', type=str, required=True, help='output folder')
    return parser


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Helpers

def resolve_config(args):
    """ AlgoConfig from --algo and the parameter flags """
    algo = args.algo.strip().lower()
    if "-" not in algo and algo not in ("astar","dijkstra"):
        algo = "{}-{}-{}".format(algo, 30 if args.ants is None else args.ants, 20 if args.iters is None else args.iters)
    elif args.ants is not None or args.iters is not None:
        raise UsageError("--ants/--iters only apply to a plain colony name, not to '{}'".format(args.algo))
    return parse_label(algo, settingsfile=args.settings, alpha=args.alpha, beta=args.beta, rho=args.rho,
                       q=args.q, timeout_seconds=args.timeout_s, seed=args.seed)


def resolve_instance(args):
    if args.instance is not None:
        return mapio.read_instance(args.instance)
    if args.map is None or args.start is None or args.goal is None:
        raise UsageError("give either --instance or all of --map, --start and --goal")
    return Instance(mapio.read_map(args.map), args.start, args.goal)


def _pgm_name(filename):
    return os.path.splitext(filename)[0] + ".pgm"


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Commands

def cmd_gen_maps(args):
    """ Writes one dataset folder with its own manifest per map size """
    for size in args.size:
        if size < MIN_DATASET_SIZE:
            raise UsageError("map size must be at least {}, got {}".format(MIN_DATASET_SIZE, size))
    for size in args.size:
        dataset_dir = os.path.join(args.out, mapio.dataset_dirname(size))
        os.makedirs(dataset_dir, exist_ok=True)
        files = []
        for index,gridmap in enumerate(generate_dataset(size, args.seed)):
            name = mapio.map_filename(size, index)
            mapio.write_map(gridmap, os.path.join(dataset_dir, name))
            files.append(name)
        mapio.write_manifest(dataset_dir, size, args.seed, files)
        print("Wrote {} maps and {} to {}".format(len(files), mapio.MANIFEST_NAME, dataset_dir))
    return EXIT_OK


def cmd_solve(args):
    config = resolve_config(args)
    instance = resolve_instance(args)
    if config.is_oracle:
        result = run_job(config, instance, args.seed)
    else:
        result = run_colony(instance, config.params, verbose=args.verbose)

    if result.best_path is None:
        print("cost=inf turns=0 time_s={:.6g} success=false".format(result.elapsed))
        return EXIT_NOPATH
    print("cost={:.6g} turns={} time_s={:.6g} success={}".format(
        result.best_path.cost, result.best_path.turns, result.elapsed, "true" if result.succeeded else "false"))
    if args.out is not None:
        mapio.write_path_json(result.best_path, args.out)
    return EXIT_OK if result.succeeded else EXIT_NOPATH


def cmd_export_pheromone(args):
    config = resolve_config(args)
    if config.is_oracle:
        raise UsageError("'{}' has no pheromone field, choose a colony algorithm".format(args.algo))
    instance = resolve_instance(args)
    if args.stage == "initial":
        field = initial_field(instance, config.params)
    else:
        field = run_colony(instance, config.params, verbose=args.verbose).final_field
        if field is None:
            print("!! no iteration finished before the timeout, no final field")
            return EXIT_NOPATH
    values = field.node_values()
    mapio.write_heatmap_csv(values, args.out)
    mapio.write_heatmap_pgm(values, _pgm_name(args.out))
    print("Wrote {} field of {} to {} and {}".format(args.stage, config.label, args.out, _pgm_name(args.out)))
    return EXIT_OK


def cmd_bench(args):
    overrides = dict(timeout_seconds=args.timeout_s)
    configs = [parse_label(label, settingsfile=args.settings, **overrides) for label in args.configs.split(",") if label.strip()]
    benchsettings = load_settings(args.settings)[1]
    n_instances = benchsettings["n_instances"] if args.instances is None else args.instances
    repeats = benchsettings["repeats"] if args.repeats is None else args.repeats
    if n_instances < 1 or repeats < 1:
        raise UsageError("--instances and --repeats must be at least 1")
    if args.ctrap == (args.dataset is not None):
        raise UsageError("give exactly one of --dataset and --ctrap")

    if args.ctrap:
        report = run_instance_study( ctrap_instance(args.size), configs, repeats, master_seed=args.seed,
                                     significance=benchsettings["significance"], dataset_id="ctrap{}".format(args.size),
                                     verbose=args.verbose )
    else:
        manifest, maps = mapio.read_manifest(args.dataset)
        report = run_benchmark( maps, configs, n_instances, repeats=repeats, master_seed=args.seed,
                                significance=benchsettings["significance"],
                                dataset_id=os.path.basename(os.path.normpath(args.dataset)), verbose=args.verbose )

    os.makedirs(args.out, exist_ok=True)
    if args.format == "csv":
        mapio.write_report_csv(report, os.path.join(args.out, "report.csv"), include_timing=args.timing)
    else:
        mapio.write_report_json(report, os.path.join(args.out, "report.json"), include_timing=args.timing)
    mapio.write_curves_csv(report, os.path.join(args.out, "curves.csv"))
    print(report)
    return EXIT_OK


COMMANDS = {
    "gen-maps": cmd_gen_maps,
    "solve": cmd_solve,
    "export-pheromone": cmd_export_pheromone,
    "bench": cmd_bench }


# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
# Main

def main(argv=None):
    """ Runs the command line and returns the exit code """
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except NoPathError as e:
        print("!! {}".format(e), file=sys.stderr)
        return EXIT_NOPATH
    except ValueError as e:
        print("!! {}".format(e), file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print("!! {}".format(e), file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
