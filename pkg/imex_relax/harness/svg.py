"""
Static SVG line charts rendered with matplotlib: one axes, a legend, and any
number of series drawn as lines or markers.
"""

import io
import os
from dataclasses import dataclass, field
from typing import List

import matplotlib
import numpy as np
from matplotlib.figure import Figure

import imex_relax.utils as utils
from imex_relax.errors import ValidationError

STYLES = {"line": {"linestyle": "-", "linewidth": 1.5}, "markers": {"linestyle": "", "marker": "o"}}

# Text stays text and output is reproducible
SVG_PARAMS = {"svg.fonttype": "none", "svg.hashsalt": "imex-relax"}


@dataclass
class Series:
    name: str
    x: np.ndarray
    y: np.ndarray
    style: str = "line"


@dataclass
class LineChart:
    title: str = ""
    xlabel: str = "x"
    ylabel: str = ""
    width: float = 6.4
    height: float = 4.2
    series: List[Series] = field(default_factory=list)

    def add(self, name: str, x, y, style: str = "line") -> "LineChart":
        if style not in STYLES:
            raise ValidationError(f"unknown series style {style!r}")
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if x.shape != y.shape:
            raise ValidationError(f"series {name!r} has {x.size} x values and {y.size} y values")
        self.series.append(Series(name, x, y, style))
        return self

    def figure(self) -> Figure:
        if not self.series:
            raise ValidationError("a chart needs at least one series")
        fig = Figure(figsize=(self.width, self.height))
        ax = fig.add_subplot()
        for series in self.series:
            keep = np.isfinite(series.y)
            ax.plot(series.x[keep], series.y[keep], label=series.name, **STYLES[series.style])
        ax.set_title(self.title)
        ax.set_xlabel(self.xlabel)
        ax.set_ylabel(self.ylabel)
        ax.legend(loc="best")
        fig.tight_layout()
        return fig

    def render(self) -> str:
        buffer = io.StringIO()
        with matplotlib.rc_context(SVG_PARAMS):
            self.figure().savefig(buffer, format="svg", metadata={"Date": None})
        return buffer.getvalue()

    def write(self, filename: str) -> str:
        utils.mkdir_p(os.path.dirname(filename))
        utils.write_file(self.render(), filename)
        return filename
