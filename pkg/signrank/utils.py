"""
Utilities for reading series and designs from CSV files and writing
score tables and power curves back.

Every writer formats floats the same way so that equal inputs always
produce equal bytes.
"""
import csv
import io
import logging
import math
from collections import OrderedDict
from types import GeneratorType

import numpy as np

from . import helpers
from .errors import (
    MissingCellError, InvalidCellError, InvalidParameterError,
    SampleTooSmallError
)

_log = logging.getLogger(__name__)

CURVE_FIELDS = ('density', 'statistic', 'theta', 'rate', 'stderr',
                'reps', 'n', 'alpha')
SCORE_FIELDS = ('branch', 'nu', 'i', 'value')
RESULT_FIELDS = ('name', 'z', 'p', 'alpha', 'reject')


def is_list_like(obj):
    """
    Returns `True` if the given object looks like a list.

    Strings are iterable too, so only the commonly known list-like
    objects are accepted.
    """
    return isinstance(obj, (list, tuple, set, dict, GeneratorType, np.ndarray))


def format_float(value):
    """Formats ``value`` with 12 significant digits, the CSV float format."""
    value = float(value)
    if not math.isfinite(value):
        return repr(value)
    text = '{:.12g}'.format(value)
    return '0' if text == '-0' else text


def _format_cell(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def _parse_float(text, column, line):
    if text is None or not text.strip():
        raise MissingCellError(column, line)
    try:
        return float(text)
    except ValueError:
        raise InvalidCellError(column, line, text) from None


def _open_for_write(file):
    # Accepts a path or an already opened text stream.
    if hasattr(file, 'write'):
        return file, False
    helpers.ensure_parent_dir_exists(file)
    return open(file, 'w', newline='', encoding='utf-8'), True


def _open_for_read(file):
    if hasattr(file, 'read'):
        return file, False
    return open(file, newline='', encoding='utf-8'), True


def write_rows(file, fields, rows):
    """Writes ``rows`` (dictionaries keyed by ``fields``) as CSV."""
    stream, close = _open_for_write(file)
    try:
        writer = csv.writer(stream, lineterminator='\n')
        writer.writerow(fields)
        count = 0
        for row in rows:
            writer.writerow([_format_cell(row[f]) for f in fields])
            count += 1
    finally:
        if close:
            stream.close()

    _log.debug('Wrote %d rows to %s', count, getattr(stream, 'name', stream))
    return count


# region Series


def read_series_csv(file):
    """
    Reads one series per column. The first row names the series and
    every other cell must hold a number.

    :returns: an ordered mapping from series name to a float array.
    """
    stream, close = _open_for_read(file)
    try:
        reader = csv.reader(stream)
        try:
            header = [name.strip() for name in next(reader)]
        except StopIteration:
            raise SampleTooSmallError(0, 1) from None

        if not header or any(not name for name in header):
            raise MissingCellError('<header>', 1)

        columns = [[] for _ in header]
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) > len(header):
                raise InvalidParameterError(
                    'row', row, 'line {} has more cells than the header'
                    .format(line))
            for j, name in enumerate(header):
                cell = row[j] if j < len(row) else None
                columns[j].append(_parse_float(cell, name, line))
    finally:
        if close:
            stream.close()

    series = OrderedDict(
        (name, np.asarray(values, dtype=float))
        for name, values in zip(header, columns))
    _log.debug('Read %d series of length %d', len(series),
               len(columns[0]) if columns else 0)
    return series


def read_design_csv(file):
    """
    Reads the regression constants ``c₁, …, cₙ`` from the first column
    of a CSV file with a header row.
    """
    series = read_series_csv(file)
    name, constants = next(iter(series.items()))
    if len(series) > 1:
        _log.warning('Design file has %d columns; using %r',
                     len(series), name)
    return constants


# endregion

# region Score tables


def score_table_rows(table):
    """Yields the entries of a `ScoreTable` as CSV rows."""
    for branch, nu, i, value in table.entries():
        yield {'branch': branch, 'nu': nu, 'i': i, 'value': value}


def write_score_table_csv(table, file):
    """Writes every entry of ``table`` as ``branch,nu,i,value``."""
    return write_rows(file, SCORE_FIELDS, score_table_rows(table))


# endregion

# region Test results


def write_results(results, file, fmt='csv'):
    """
    Writes `TestResult` instances, as CSV or as one JSON object per line
    (``fmt='json'``).
    """
    if fmt == 'csv':
        return write_rows(file, RESULT_FIELDS,
                          (r.to_dict() for r in results))

    if fmt != 'json':
        raise InvalidParameterError('format', fmt, 'use "csv" or "json"')

    stream, close = _open_for_write(file)
    try:
        count = 0
        for result in results:
            stream.write(result.to_json())
            stream.write('\n')
            count += 1
    finally:
        if close:
            stream.close()
    return count


# endregion

# region Power curves


def write_curves_csv(curves, file):
    """
    Writes power curves with the columns
    ``density,statistic,theta,rate,stderr,reps,n,alpha``.
    """
    if not is_list_like(curves):
        curves = [curves]
    return write_rows(file, CURVE_FIELDS,
                      (row for curve in curves for row in curve.rows()))


def read_curves_csv(file):
    """
    Reads the curves written by `write_curves_csv`, one `PowerCurve`
    per ``(density, statistic)`` pair in order of first appearance.
    """
    from .simulation.power import PowerCurve

    stream, close = _open_for_read(file)
    try:
        reader = csv.DictReader(stream)
        missing = [f for f in CURVE_FIELDS
                   if f not in (reader.fieldnames or ())]
        if missing:
            raise MissingCellError(missing[0], 1)

        grouped = OrderedDict()
        for row in reader:
            line = reader.line_num
            for field in CURVE_FIELDS:
                if row.get(field) is None or not row[field].strip():
                    raise MissingCellError(field, line)

            key = (row['density'], row['statistic'])
            grouped.setdefault(key, []).append((
                _parse_float(row['theta'], 'theta', line),
                _parse_float(row['rate'], 'rate', line),
                _parse_float(row['stderr'], 'stderr', line),
                int(_parse_float(row['reps'], 'reps', line)),
                int(_parse_float(row['n'], 'n', line)),
                _parse_float(row['alpha'], 'alpha', line),
            ))
    finally:
        if close:
            stream.close()

    curves = []
    for (density, statistic), points in grouped.items():
        theta, rate, stderr, reps, n, alpha = zip(*points)
        curves.append(PowerCurve(statistic, tuple(theta), np.asarray(rate),
                                 reps[0], n[0], alpha[0], np.asarray(stderr),
                                 density))
    return curves


def curves_to_csv_text(curves):
    """The CSV text `write_curves_csv` would write."""
    buffer = io.StringIO()
    write_curves_csv(curves, buffer)
    return buffer.getvalue()


# endregion
