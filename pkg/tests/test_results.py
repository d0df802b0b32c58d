# Copyright (c) 2026 ARIS-OPT contributors.
#
# This work is provided "AS IS" and subject to the license included in this
# distribution package. See LICENSE.

import csv
import math

import numpy as np
import pytest

from aris import constants
from aris.harness import SweepResult, SweepRow, write_channel_csv, write_csv


@pytest.fixture
def result():
    sweep = SweepResult("d2d_power", "power", ("worst_sinr_db", "offdiag_ratio"))
    for value in (10.0, 20.0):
        for label, shift in (("aris", 1.0), ("conventional", 0.0)):
            sweep.add_row(
                SweepRow(
                    value,
                    label,
                    {"worst_sinr_db": value / 10.0 + shift, "offdiag_ratio": 0.1},
                    {"worst_sinr_db": 0.5, "offdiag_ratio": 0.0},
                    0.75 if label == "aris" else 1.0,
                    3,
                    1 if label == "aris" and value == 20.0 else 0,
                    0.01,
                )
            )
    return sweep


class TestSweepResult:
    def test_lookup(self, result):
        assert len(result) == 4
        assert result.labels == ["aris", "conventional"]
        row = result.row(20.0, "aris")
        assert row.trials == 4
        with pytest.raises(KeyError):
            result.row(30.0, "aris")

    def test_series(self, result):
        assert result.series("worst_sinr_db", "aris") == ([10.0, 20.0], [2.0, 3.0])
        assert result.series("mean_modulus", "conventional") == ([10.0, 20.0], [1.0, 1.0])


class TestCsv:
    def test_layout(self, result, tmp_path):
        path = tmp_path / "nested" / "d2d.csv"
        write_csv(result, str(path))
        raw = path.read_bytes()
        assert b"\r\n" not in raw
        with open(path, newline="", encoding="utf-8") as fh:
            records = list(csv.reader(fh))
        assert tuple(records[0]) == constants.CSV_HEADER
        # one record per row and metric
        assert len(records) == 1 + 4 * 2
        assert records[1] == [
            "d2d_power",
            "power",
            "10",
            "aris",
            "worst_sinr_db",
            "2",
            "0.5",
            "0.75",
            "3",
            "0",
        ]

    def test_numbers_parse_back_exactly(self, tmp_path):
        value = 1.0 / 3.0
        sweep = SweepResult("radar_comm_k", "num_elements", ("residual",))
        sweep.add_row(SweepRow(4.0, "aris", {"residual": value}, {"residual": math.nan}, value, 1, 0, 0.0))
        path = tmp_path / "exact.csv"
        write_csv(sweep, str(path))
        with open(path, newline="", encoding="utf-8") as fh:
            record = list(csv.reader(fh))[1]
        assert float(record[5]) == value
        assert math.isnan(float(record[6]))


class TestChannelCsv:
    def test_layout(self, tmp_path):
        sweep = SweepResult("d2d_power", "power", ("worst_sinr_db",))
        moduli = np.array([[1.0, 0.25], [0.5, 2.0]])
        sweep.add_row(
            SweepRow(10.0, "aris", {"worst_sinr_db": 1.0}, {"worst_sinr_db": 0.0}, 0.5, 2, 0, 0.1, moduli)
        )
        sweep.add_row(
            SweepRow(10.0, "conventional", {"worst_sinr_db": 0.0}, {"worst_sinr_db": 0.0}, 1.0, 0, 2, 0.0)
        )
        assert sweep.has_channel_moduli

        path = tmp_path / "d2d_power_channel.csv"
        write_channel_csv(sweep, str(path))
        assert b"\r\n" not in path.read_bytes()
        with open(path, newline="", encoding="utf-8") as fh:
            records = list(csv.reader(fh))
        assert tuple(records[0]) == constants.CHANNEL_CSV_HEADER
        # rows without moduli are skipped, entries are row major
        assert records[1:] == [
            ["d2d_power", "power", "10", "aris", "0", "0", "1"],
            ["d2d_power", "power", "10", "aris", "0", "1", "0.25"],
            ["d2d_power", "power", "10", "aris", "1", "0", "0.5"],
            ["d2d_power", "power", "10", "aris", "1", "1", "2"],
        ]

    def test_plain_results_have_no_channel(self, result):
        assert not result.has_channel_moduli
