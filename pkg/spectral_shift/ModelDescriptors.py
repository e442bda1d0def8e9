"""
JSON descriptors of perturbation pairs and 1D models.

Every descriptor is an object with a "kind" field:

    matrix   : n, d, A, G, T (row-major flat lists, entries real or [re, im]), zeta0 optional
    robin    : length, potential (samples over [0, length]), beta0, beta1, beta_ref
    delta    : alpha, comparison_c optional, path ("direct" or "comparison") optional
    decouple : cutoff, potential (samples over [-cutoff, cutoff])

A missing potential is the zero potential.

"""
import hashlib
import json

import numpy

from spectral_shift.DecoupledLineModel import DecoupledLineModel
from spectral_shift.DeltaPointModel import PATHS, DeltaPointModel
from spectral_shift.HermitianOperator import HermitianOperator
from spectral_shift.PerturbationPair import PerturbationPair
from spectral_shift.RobinIntervalModel import RobinIntervalModel
from spectral_shift.ShootingSolver import PotentialSamples

KINDS = ("matrix", "robin", "delta", "decouple")


class Descriptor(object):
    """
    A parsed descriptor

    Args:
        kind(str): One of KINDS
        model(object): PerturbationPair or model instance
        raw(dict): The decoded JSON document
        options(dict): Kind specific run options

    """

    def __init__(self, kind, model, raw, options=None):

        self.kind = kind
        self.model = model
        self.raw = raw
        self.options = options or {}

    @property
    def digest(self):
        canonical = json.dumps(self.raw, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _field(raw, name, kind):
    if name not in raw:
        raise ValueError("{} descriptor is missing field '{}'".format(kind, name))
    return raw[name]


def _number(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError("Field '{}' must be a number, got {!r}".format(name, value))
    return float(value)


def _count(value, name):
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise ValueError("Field '{}' must be a positive integer, got {!r}".format(name, value))
    return value


def parse_complex_matrix(entries, rows, columns, name):
    """
    Row-major flat list of rows*columns entries, each real or an [re, im] pair

    """

    if not isinstance(entries, list) or len(entries) != rows*columns:
        raise ValueError("Field '{}' must list {} entries for a {}x{} matrix".format(
            name, rows*columns, rows, columns))

    values = []
    for entry in entries:
        if isinstance(entry, list):
            if len(entry) != 2:
                raise ValueError("Field '{}' has entry {!r}, expected [re, im]".format(
                    name, entry))
            values.append(complex(_number(entry[0], name), _number(entry[1], name)))
        else:
            values.append(complex(_number(entry, name)))
    return numpy.array(values).reshape(rows, columns)


def _potential(raw, start, stop):
    samples = raw.get("potential")
    if samples is None:
        return PotentialSamples.zero(start, stop)
    if not isinstance(samples, list):
        raise ValueError("Field 'potential' must be a list of samples")
    return PotentialSamples([_number(value, "potential") for value in samples], start, stop)


def _pair_of_numbers(raw, name, kind):
    value = _field(raw, name, kind)
    if not isinstance(value, list) or len(value) != 2:
        raise ValueError("Field '{}' must be a pair of numbers".format(name))
    return tuple(_number(entry, name) for entry in value)


def _build_matrix(raw):
    n = _count(_field(raw, "n", "matrix"), "n")
    d = _count(_field(raw, "d", "matrix"), "d")
    a_entries = parse_complex_matrix(_field(raw, "A", "matrix"), n, n, "A")
    g_map = parse_complex_matrix(_field(raw, "G", "matrix"), n, d, "G")
    t_coupling = parse_complex_matrix(_field(raw, "T", "matrix"), d, d, "T")
    zeta0 = raw.get("zeta0")
    if zeta0 is not None:
        zeta0 = _number(zeta0, "zeta0")

    try:
        a_op = HermitianOperator(a_entries)
    except ValueError as error:
        raise ValueError("A: {}".format(error))
    return PerturbationPair(a_op, g_map, t_coupling, zeta0), {}


def _build_robin(raw):
    length = _number(_field(raw, "length", "robin"), "length")
    if not length > 0:
        raise ValueError("Field 'length' must be positive, got {}".format(length))
    model = RobinIntervalModel(length, _potential(raw, 0.0, length),
                               _pair_of_numbers(raw, "beta0", "robin"),
                               _pair_of_numbers(raw, "beta1", "robin"),
                               _number(_field(raw, "beta_ref", "robin"), "beta_ref"))
    return model, {}


def _build_delta(raw):
    alpha = _number(_field(raw, "alpha", "delta"), "alpha")
    comparison_c = raw.get("comparison_c")
    if comparison_c is not None:
        comparison_c = _number(comparison_c, "comparison_c")
    path = raw.get("path", "direct" if alpha < 0 else "comparison")
    if path not in PATHS:
        raise ValueError("Field 'path' must be one of {}, got {!r}".format(PATHS, path))
    return DeltaPointModel(alpha, comparison_c), {"path": path}


def _build_decouple(raw):
    cutoff = _number(_field(raw, "cutoff", "decouple"), "cutoff")
    if not cutoff > 0:
        raise ValueError("Field 'cutoff' must be positive, got {}".format(cutoff))
    return DecoupledLineModel(cutoff, _potential(raw, -cutoff, cutoff)), {}


BUILDERS = {"matrix": _build_matrix,
            "robin": _build_robin,
            "delta": _build_delta,
            "decouple": _build_decouple}


def parse_descriptor(raw):
    """
    Validate a decoded descriptor and build its model

    Raises:
        ValueError: Unknown kind, missing or malformed field, or a violated model invariant

    """

    if not isinstance(raw, dict):
        raise ValueError("Descriptor must be a JSON object")
    kind = raw.get("kind")
    if kind not in BUILDERS:
        raise ValueError("Descriptor kind must be one of {}, got {!r}".format(KINDS, kind))

    model, options = BUILDERS[kind](raw)
    return Descriptor(kind, model, raw, options)


def load_descriptor(path):
    with open(path) as stream:
        try:
            raw = json.load(stream)
        except ValueError as error:
            raise ValueError("Descriptor {} is not valid JSON: {}".format(path, error))
    return parse_descriptor(raw)
