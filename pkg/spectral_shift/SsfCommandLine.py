"""
ssf-tool: compute spectral shift functions from descriptor files and run verification suites.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 numerical error.

"""
import argparse
import json
import logging
import os
import sys

import numpy

from spectral_shift import HermitianOperator, NevanlinnaLogarithm, ShootingSolver
from spectral_shift.ModelDescriptors import load_descriptor
from spectral_shift.NevanlinnaLogarithm import EpsilonSchedule
from spectral_shift.NumericalErrors import SpectralShiftError
from spectral_shift.SpectralGridGenerator import SpectralGridGenerator
from spectral_shift.SpectralShiftGrid import SsfGrid, counting_oracle_values, \
    ssf_boundary_limit
from spectral_shift.SsfPlotter import write_svg
from spectral_shift.VerificationSuites import PairVerifier

COMPUTE_SUBCOMMANDS = ("matrix", "robin", "delta", "decouple")
SUBCOMMANDS = COMPUTE_SUBCOMMANDS + ("verify",)
FORMATS = ("csv", "json")

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERICAL_ERROR = 3

log = logging.getLogger(__name__)


class RunConfig(object):
    """
    Validated settings of one ssf-tool run

    Raises:
        ValueError: Grid, schedule, power or output settings are inconsistent

    """

    def __init__(self, subcommand, input_path, out_path, grid_min=-1.0, grid_max=2.0,
                 grid_points=301, eps_start=1e-3, eps_ratio=0.1, eps_count=3,
                 extrapolation_order=1, power=1, output_format="csv", plot=False,
                 basis_seed=None, workers=1, strict=False):

        if subcommand not in SUBCOMMANDS:
            raise ValueError("Unknown subcommand {}".format(subcommand))
        if not grid_min < grid_max:
            raise ValueError("grid_min {} must be below grid_max {}".format(grid_min, grid_max))
        if grid_points < 2:
            raise ValueError("grid_points must be at least 2, got {}".format(grid_points))
        if power < 1 or power % 2 == 0:
            raise ValueError("power must be an odd positive integer, got {}".format(power))
        if output_format not in FORMATS:
            raise ValueError("format must be one of {}, got {}".format(FORMATS, output_format))
        if workers < 1:
            raise ValueError("workers must be positive, got {}".format(workers))

        self.subcommand = subcommand
        self.input_path = input_path
        self.out_path = out_path
        self.grid_min = grid_min
        self.grid_max = grid_max
        self.grid_points = grid_points
        self.schedule = EpsilonSchedule.geometric(eps_start, eps_ratio, eps_count,
                                                  extrapolation_order, strict)
        self.power = power
        self.output_format = output_format
        self.plot = plot
        self.basis_seed = basis_seed
        self.workers = workers

    @classmethod
    def from_arguments(cls, args):
        return cls(args.subcommand, args.input, args.out, args.grid_min, args.grid_max,
                   args.grid_points, args.eps_start, args.eps_ratio, args.eps_count,
                   args.extrapolation_order, args.power, args.format, args.plot,
                   args.basis_seed, args.workers, args.strict_extrapolation)

    def grid(self):
        return SpectralGridGenerator().generate_linear_points(self.grid_min, self.grid_max,
                                                              self.grid_points)

    @property
    def plot_path(self):
        return os.path.splitext(self.out_path)[0] + ".svg"

    def metadata(self, descriptor):
        return {"subcommand": self.subcommand,
                "kind": descriptor.kind,
                "descriptor_sha256": descriptor.digest,
                "eps_schedule": self.schedule.describe(),
                "power": self.power,
                "basis_seed": self.basis_seed,
                "grid": {"min": self.grid_min, "max": self.grid_max,
                         "points": self.grid_points},
                "tolerances": {"hermitian": HermitianOperator.HERMITIAN_TOL,
                               "spectrum": HermitianOperator.SPECTRUM_TOL,
                               "dissipative": NevanlinnaLogarithm.DISSIPATIVE_TOL,
                               "branch": NevanlinnaLogarithm.BRANCH_TOL,
                               "quadrature": NevanlinnaLogarithm.QUADRATURE_TOL,
                               "ode_rtol": ShootingSolver.ODE_RTOL,
                               "ode_atol": ShootingSolver.ODE_ATOL}}


def _common_arguments():
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("input", help="JSON descriptor file")
    parser.add_argument("--out", required=True, help="Output file")
    parser.add_argument("--grid-min", type=float, default=-1.0)
    parser.add_argument("--grid-max", type=float, default=2.0)
    parser.add_argument("--grid-points", type=int, default=301)
    parser.add_argument("--eps-start", type=float, default=1e-3)
    parser.add_argument("--eps-ratio", type=float, default=0.1)
    parser.add_argument("--eps-count", type=int, default=3)
    parser.add_argument("--extrapolation-order", type=int, default=1, choices=(0, 1, 2))
    parser.add_argument("--power", type=int, default=1,
                        help="Odd trace formula power m recorded with the grid")
    parser.add_argument("--format", choices=FORMATS, default="csv")
    parser.add_argument("--plot", action="store_true", help="Also write an SVG plot")
    parser.add_argument("--basis-seed", type=int, default=None,
                        help="Seed of a random orthonormal basis for the trace")
    parser.add_argument("--workers", type=int, default=1,
                        help="Threads used to evaluate grid points")
    parser.add_argument("--strict-extrapolation", action="store_true",
                        help="Fail on diverging boundary estimates instead of warning")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", action="store_true")
    verbosity.add_argument("--quiet", action="store_true")
    return parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ssf-tool", description="Spectral shift functions from boundary data")
    subparsers = parser.add_subparsers(dest="subcommand")
    subparsers.required = True
    common = _common_arguments()
    helps = {"matrix": "Finite rank perturbation pair {A, A + G T G*}",
             "robin": "Two Robin realisations on an interval",
             "delta": "Point interaction on the line",
             "decouple": "Compactly supported potential on the line",
             "verify": "Run the verification suites on a matrix descriptor"}
    for name in SUBCOMMANDS:
        subparsers.add_parser(name, parents=[common], help=helps[name])
    return parser


def compute_grid(config, descriptor):
    """
    Spectral shift function of the described model on the configured grid, with the
    independent oracle column where the model has one

    """

    grid = config.grid()
    schedule = config.schedule
    model = descriptor.model

    if descriptor.kind == "matrix":
        result = ssf_boundary_limit(model.weyl_evaluator(), grid, schedule, config.power,
                                    config.basis_seed, config.workers)
        offset = int(numpy.count_nonzero(model.t_coupling.eigenvalues < 0))
        if offset:
            log.warning("T has %d negative eigenvalues, xi carries a constant offset of %d",
                        offset, offset)
        oracle = counting_oracle_values(model.a_op, model.b_op, grid) + offset
        return result.with_oracle(oracle)

    if descriptor.kind == "robin":
        result = model.ssf(grid, schedule, config.power, config.workers)
        return result.with_oracle(model.counting_difference(grid))

    if descriptor.kind == "delta":
        result = model.ssf(grid, schedule, descriptor.options["path"], config.power,
                           config.workers)
        if model.alpha < 0:
            return result.with_oracle(model.closed_form(grid))
        return result

    return model.ssf(grid, schedule, config.power, config.workers)


def write_grid(config, descriptor, grid):
    with open(config.out_path, "w") as stream:
        if config.output_format == "csv":
            grid.write_csv(stream)
        else:
            json.dump(grid.as_json(config.metadata(descriptor)), stream, indent=2,
                      sort_keys=True)
            stream.write("\n")
    log.info("Wrote %d points to %s", len(grid), config.out_path)

    if config.plot:
        write_svg(grid, config.plot_path, title=descriptor.kind)
        log.info("Wrote plot to %s", config.plot_path)


def run_compute(config):
    descriptor = load_descriptor(config.input_path)
    if descriptor.kind != config.subcommand:
        raise ValueError("Subcommand {} needs a {} descriptor, got kind {}".format(
            config.subcommand, config.subcommand, descriptor.kind))
    log.info("Loaded %s descriptor %s", descriptor.kind, config.input_path)

    result = compute_grid(config, descriptor)
    write_grid(config, descriptor, result)
    return EXIT_OK


def run_verify(config):
    descriptor = load_descriptor(config.input_path)
    if descriptor.kind != "matrix":
        raise ValueError("verify needs a matrix descriptor, got kind {}".format(descriptor.kind))

    verifier = PairVerifier(descriptor.model, config.grid(), config.schedule,
                            config.basis_seed, config.workers)
    report = verifier.run()

    document = report.as_dict()
    document["metadata"] = config.metadata(descriptor)
    with open(config.out_path, "w") as stream:
        json.dump(document, stream, indent=2, sort_keys=True)
        stream.write("\n")
    log.info("Wrote verification report to %s", config.out_path)

    if config.plot:
        xi = verifier.xi()
        oracle = counting_oracle_values(descriptor.model.a_op, descriptor.model.b_op, xi.lambdas)
        write_svg(SsfGrid(xi.lambdas, xi.xi, xi.eps_schedule, xi.power, xi.basis_seed,
                          oracle + verifier.offset), config.plot_path, title="verify")

    if report.passed:
        return EXIT_OK
    for result in report.results:
        if result.failed:
            log.error("Suite %s failed: %s", result.name, result.detail)
    return EXIT_VERIFY_FAILED


def main(argv=None):
    args = build_parser().parse_args(argv)

    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.ERROR
    logging.basicConfig(format="[%(name)-36s] %(levelname)s %(message)s", level=level)

    try:
        config = RunConfig.from_arguments(args)
        if config.subcommand == "verify":
            return run_verify(config)
        return run_compute(config)
    except SpectralShiftError as error:
        log.error("%s: %s", type(error).__name__, error)
        return EXIT_NUMERICAL_ERROR
    except (ValueError, IOError) as error:
        log.error("Invalid input: %s", error)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
