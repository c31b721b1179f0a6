"""Deterministic writers for the CSV and JSON artifacts."""
import json
import os

import numpy as np

from layered_scatter.utils.exception import IoError

FLOAT_FORMAT = '%.17g'


def _ensure_parent(path):
    parent = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(parent, exist_ok=True)
    except OSError as error:
        raise IoError("cannot create output directory {0}: {1}".format(parent, error)) from error


def write_csv(frame, path):
    """Write a DataFrame with 17 significant digits, '.' decimals and '\\n' line endings."""
    _ensure_parent(path)
    try:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    except OSError as error:
        raise IoError("cannot write {0}: {1}".format(path, error)) from error
    return path


def json_converter(obj):
    """Fallback for numpy scalars and arrays in json.dumps."""
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError("Object of type {0} is not JSON serializable".format(type(obj).__name__))


def dumps(obj):
    return json.dumps(obj, default=json_converter, sort_keys=True, indent=2)


def write_json(obj, path):
    _ensure_parent(path)
    try:
        with open(path, 'w', newline='\n') as json_file:
            json_file.write(dumps(obj))
            json_file.write('\n')
    except OSError as error:
        raise IoError("cannot write {0}: {1}".format(path, error)) from error
    return path


def read_json(path):
    try:
        with open(path, 'r') as json_file:
            return json.load(json_file)
    except OSError as error:
        raise IoError("cannot read {0}: {1}".format(path, error)) from error
