"""Every dimension in tests/data/golden_dims.json must match fjkit exactly.

The golden file comes from tests/data/make_golden_dims.py, an
independent transcription of the rules that does not import fjkit.
"""

import json
from pathlib import Path

import pytest

from fjkit.cli import parse_pi1
from fjkit.errors import CaseError
from fjkit.fjspherical import AT_MOST_ONE, fj_dim
from fjkit.whittaker import PJPS, PS, AntiholDS, CharacterN0, HolDS, LargeDS, whittaker_dim

GOLDEN = json.loads((Path(__file__).parent / "data" / "golden_dims.json").read_text())


def build(kind, data):
    if kind == "holds":
        return HolDS(*data)
    if kind == "antiholds":
        return AntiholDS(*data)
    if kind == "largeds":
        return LargeDS(*data)
    if kind == "pjps":
        n, sign, parity = data
        return PJPS(n, sign, parity, 0.3j)
    sigma, kt = data
    return PS(0.3j, 0.7j, tuple(sigma), tuple(kt))


def fj_value(rec):
    try:
        d = fj_dim(build(rec["rep"], rec["data"]), parse_pi1(rec["pi1"]), rec["m"])
    except CaseError:
        return "CaseError"
    return "<=1" if d == AT_MOST_ONE else str(d)


def fj_mismatches():
    return [(r, fj_value(r)) for r in GOLDEN["fj"] if fj_value(r) != r["dim"]]


def whittaker_mismatches():
    bad = []
    for r in GOLDEN["whittaker"]:
        got = str(whittaker_dim(build(r["rep"], r["data"]), CharacterN0(r["m0"], r["m3"])))
        if got != r["dim"]:
            bad.append((r, got))
    return bad


def test_golden_covers_every_family():
    kinds = {r["rep"] for r in GOLDEN["fj"]}
    assert kinds == {"holds", "antiholds", "largeds", "pjps", "ps"}
    assert {r["dim"] for r in GOLDEN["fj"]} == {"0", "1", "<=1", "CaseError"}
    assert len(GOLDEN["fj"]) > 1000


def test_fj_dimensions_match_golden():
    bad = fj_mismatches()
    assert not bad, f"{len(bad)} mismatches, first: {bad[:3]}"


def test_whittaker_dimensions_match_golden():
    bad = whittaker_mismatches()
    assert not bad, f"{len(bad)} mismatches, first: {bad[:3]}"


@pytest.mark.parametrize("rec", [r for r in GOLDEN["fj"] if r["dim"] == "1"][:40],
                         ids=lambda r: f"{r['rep']}{r['data']}-{r['pi1']}-m{r['m']}")
def test_nonzero_dimension_has_leading_formula(rec):
    from fjkit.fjspherical import leading_formula

    f = leading_formula(build(rec["rep"], rec["data"]), parse_pi1(rec["pi1"]), rec["m"])
    assert f.evaluate(3.0) != 0
