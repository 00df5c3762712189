import json
import math

import pandas as pd
import pytest

from dsc.cli.output import write_zero_set
from dsc.zeros import AffineMap, PeriodicSymbol, Rectangle

PERIOD = 2 * math.pi / math.log(2)


def test_zero_set_writes_rows_and_certificate(tmp_path):
    zero_set = PeriodicSymbol(AffineMap(0.0, 1.0)).zeros(0.25, Rectangle(1.0, 3.0, -10.0, 10.0))
    table, certificate = write_zero_set(zero_set, tmp_path / "zeros.csv", "solutions of phi(s) = w")
    assert certificate == tmp_path / "zeros.json"
    with table.open(encoding="utf-8") as handle:
        assert handle.readline() == "# solutions of phi(s) = w\n"
        frame = pd.read_csv(handle)
    assert list(frame.columns) == ["re", "im", "multiplicity"]
    assert frame["re"].tolist() == pytest.approx([2.0, 2.0, 2.0])
    assert sorted(frame["im"]) == pytest.approx([-PERIOD, 0.0, PERIOD], abs=1e-9)
    header = json.loads(certificate.read_text(encoding="utf-8"))
    assert header["winding_total"] == 3 == frame["multiplicity"].sum()
    assert header["rect"] == [1.0, 3.0, -10.0, 10.0]
    assert header["unrefined"] == 0
    assert header["excluded"] == 0
