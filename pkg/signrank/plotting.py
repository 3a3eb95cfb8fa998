"""Rendering of power curves as SVG, through the optional matplotlib."""
import logging

try:
    import matplotlib
    from matplotlib.figure import Figure
except ImportError:
    matplotlib = None

from . import helpers
from .errors import MissingDependencyError, InvalidParameterError

_log = logging.getLogger(__name__)

# Fixed so that rendering the same curves twice gives the same bytes.
_RC = {
    'svg.hashsalt': 'signrank',
    'svg.fonttype': 'path',
    'path.simplify': False,
}


def render_svg(curves, path, title=None):
    """
    Plots the rejection frequency of every curve against ``θ``, with the
    nominal level as a dotted line, and saves the figure to ``path``.

    :raises MissingDependencyError: if matplotlib is not installed.
    """
    if matplotlib is None:
        raise MissingDependencyError('matplotlib', 'SVG rendering')

    curves = list(curves)
    if not curves:
        raise InvalidParameterError('curves', curves, 'nothing to plot')

    helpers.ensure_parent_dir_exists(path)
    with matplotlib.rc_context(_RC):
        figure = Figure(figsize=(7, 4.5))
        axes = figure.add_subplot()
        for curve in curves:
            axes.plot(curve.theta_grid, curve.rejection_rate, marker='o',
                      markersize=3, label=curve.statistic_name)

        axes.axhline(curves[0].alpha, color='grey', linestyle=':')
        axes.set_xlabel('θ')
        axes.set_ylabel('rejection frequency')
        axes.set_ylim(0, 1)
        if title is None and curves[0].density:
            title = '{} (n={}, {} replications)'.format(
                curves[0].density, curves[0].n, curves[0].replications)
        if title:
            axes.set_title(title)
        axes.legend(loc='upper center', ncol=3, fontsize='small')

        figure.savefig(path, format='svg', metadata={'Date': None})

    _log.info('Wrote %d curves to %s', len(curves), path)
