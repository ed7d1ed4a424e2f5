"""
SVG rendering tests
"""

import pytest

from ogt_sim.cli.plot import plot, render_svg
from ogt_sim.harness.output import emit_csv
from ogt_sim.harness.runner import IterationRecord


def _records(gaps):
    return [IterationRecord(k=k, vectors_sent=3 * k, grad_evals=4 * k, loss_gap=g, consensus_X=0.0, consensus_Q=0.0)
            for k, g in enumerate(gaps)]


class TestRenderSvg:
    def test_deterministic(self):
        series = [("ogt", [0.0, 1.0, 2.0], [1.0, 1e-3, 1e-6]), ("gt", [0.0, 1.0, 2.0], [1.0, 0.5, 0.25])]
        first = render_svg(series, "communication rounds")
        assert first == render_svg(series, "communication rounds")
        assert first.count("<polyline") == 2
        assert "1e-6" in first

    def test_zero_gap_drawn_at_floor(self):
        svg = render_svg([("a", [0.0, 1.0], [1.0, 0.0])], "rounds")
        assert "1e-17" in svg

    def test_label_escaped(self):
        assert "a&lt;b" in render_svg([("a<b", [0.0], [1.0])], "rounds")


class TestPlot:
    def test_legend_order(self, tmp_path):
        emit_csv(_records([1.0, 0.1]), tmp_path / "cycle_gt.csv")
        emit_csv(_records([1.0, 0.01]), tmp_path / "cycle_ogt.csv")
        out = plot([tmp_path / "cycle_ogt.csv", tmp_path / "cycle_gt.csv"], tmp_path / "p.svg")
        text = out.read_text()
        assert text.index("cycle_ogt") < text.index("cycle_gt")

    def test_unknown_axis(self, tmp_path):
        with pytest.raises(ValueError):
            plot([], tmp_path / "p.svg", x_axis="seconds")
