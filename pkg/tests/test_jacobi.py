import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fjkit.errors import CaseError, InconsistencyError, MissingCoefficient, ParameterError, TagError
from fjkit.jacobi import (
    CASE_IDS,
    HalfIntegralFormTable,
    JacobiPoint,
    SemiIntegralMatrix,
    SiegelCoeffTable,
    assemble_example,
    dump_half_integral_table,
    dump_siegel_table,
    eta_k,
    extract_c_alpha,
    load_half_integral_table,
    load_siegel_table,
    phi_m_k,
    singular_support,
    synthetic_form_table,
    synthetic_maass_table,
    synthetic_table,
    theta_decompose,
)


def coeff(D, c):
    return complex(math.sin(D) / (1 + D), 0.1 * c)


TABLE = synthetic_table(coeff, 16, weight=(3, 3))


def test_semi_integral_matrix():
    T = SemiIntegralMatrix(2, 1, 3)
    assert T.disc == 23 and T.det == F(23, 4) and T.trace == 5 and T.positive
    assert T.transform(((1, 0), (0, 1))) == T
    assert T.transform(((0, -1), (1, 0))) == SemiIntegralMatrix(3, -1, 2)


@pytest.mark.parametrize("m,expected", [
    (1, [(2, 1)]),
    (3, [(6, 1)]),
    (4, [(4, 4), (8, 1)]),
    (-4, [(4, 4), (8, 1)]),
    (9, [(6, 9), (12, F(9, 4)), (18, 1)]),
])
def test_singular_support(m, expected):
    assert singular_support(m) == expected


@given(m=st.integers(-30, 30).filter(bool))
@settings(max_examples=60, deadline=None)
def test_singular_support_defining_property(m):
    got = singular_support(m)
    brute = [a for a in range(1, 2 * abs(m) + 1) if F(a * a, 4 * m).denominator == 1]
    assert [a for a, _ in got] == brute
    assert all(d == F(2 * m, a) ** 2 for a, d in got)


def test_singular_support_rejects_zero():
    with pytest.raises(ParameterError):
        singular_support(0)


def test_extract_c_alpha_reads_the_table():
    # m=1, alpha=1, N=3: t2 = 1, t3 = (3 + 1)/4 = 1
    assert extract_c_alpha(TABLE, 1, 1, 3) == TABLE.get((1, 1, 1))
    assert extract_c_alpha(TABLE, 1, 1, 4) == 0
    assert extract_c_alpha(TABLE, 2, 2, 4) == TABLE.get((2, 2, 1))
    with pytest.raises(ParameterError):
        extract_c_alpha(TABLE, 1, 1, 0)


def test_table_rejects_non_invariant_data():
    with pytest.raises(InconsistencyError):
        SiegelCoeffTable({(1, 1, 1): 1.0, (1, -1, 1): 2.0}, 2)
    with pytest.raises(ParameterError):
        SiegelCoeffTable({(1, 2, 1): 1.0}, 4)
    with pytest.raises(MissingCoefficient):
        TABLE.get((10, 0, 10))


def test_theta_decompose_zero_table():
    h = theta_decompose(SiegelCoeffTable({}, 10), 2)
    assert all(not row for row in h.coeffs.values())
    assert h.weight == F(3, 2)


def test_theta_decompose_support_and_orbit():
    # only the class of the identity: its GL2(Z) orbit up to trace 6
    orbit = {(1, 0, 1): 1.0, (1, 2, 2): 1.0, (1, -2, 2): 1.0, (2, 2, 1): 1.0, (2, -2, 1): 1.0}
    table = SiegelCoeffTable(orbit, 4, weight=(2, 2))
    h = theta_decompose(table, 1)
    assert h.coeffs[2] == {F(1): 1.0}
    assert h.coeffs[1] == {}
    big = theta_decompose(TABLE, 2)
    for a, row in big.coeffs.items():
        assert all((int(l * 8) + a * a) % 8 == 0 for l in row)


def test_phi_matches_brute_force_sum():
    m, k = 1, 1
    u0, u2, u3, a2 = 0.15, -0.2, 0.3, 1.1
    y = a2 * a2
    ref = 0
    for t2 in range(-14, 15):
        for t3 in range(1, 16):
            if 4 * m * t3 > t2 * t2 and TABLE.known((m, t2, t3)):
                ph = np.exp(2j * math.pi * (m * 1j * y * u0 * u0 + t2 * (1j * y * u0 + u2) + t3 * (1j * y + u3)))
                ref += TABLE.get((m, t2, t3)) * a2 ** (3 + k) * (u0 + t2 / 2) ** k * ph
    assert abs(phi_m_k(TABLE, m, k, (u0, u2, u3, a2)) - ref) < 1e-12


def test_phi_of_zero_table_vanishes():
    assert phi_m_k(SiegelCoeffTable({}, 8), 1, 0, (0.1, 0.2, 0.3, 1.0)) == 0


def test_eta_k():
    assert eta_k(0, 0.0, 1, 1) == 1.0
    assert abs(eta_k(2, 0.5, 1, 2) - 0.25 * math.exp(-math.pi)) < 1e-15
    assert eta_k(1, np.array([0.1, -0.1]), 1, 1).shape == (2,)


def test_form_table_validation():
    with pytest.raises(ParameterError):
        HalfIntegralFormTable(1, F(5, 2), {1: {F(1, 4): 1.0}})
    with pytest.raises(ParameterError):
        HalfIntegralFormTable(1, F(5, 2), {3: {F(3, 4): 1.0}})
    with pytest.raises(ParameterError):
        HalfIntegralFormTable(1, 2, {})
    HalfIntegralFormTable(1, F(5, 2), {1: {F(3, 4): 1.0}})


def test_synthetic_tables_respect_congruence():
    for m, w in ((2, F(-5, 2)), (-1, F(7, 2)), (3, F(5, 2))):
        f = synthetic_form_table(m, w, n_terms=4)
        assert all(len(r) == 4 for r in f.coeffs.values())
    g = synthetic_maass_table(-1, 0.7j, F(1, 2))
    assert set(g.coeffs) == {1, 2}


def test_siegel_table_round_trip(tmp_path):
    p = tmp_path / "c.jsonl"
    dump_siegel_table(TABLE, p)
    back = load_siegel_table(p, trace_bound=TABLE.trace_bound, weight=(3, 3))
    assert back.coeffs == TABLE.coeffs


def test_half_integral_round_trip(tmp_path):
    f = synthetic_form_table(2, F(-5, 2), seed=3)
    p = tmp_path / "f.json"
    dump_half_integral_table(f, p)
    back = load_half_integral_table(p)
    assert back.weight == f.weight and back.coeffs == f.coeffs


def test_loaders_report_malformed_records(tmp_path):
    p = tmp_path / "bad.jsonl"
    p.write_text('{"t1": 1, "t2": 0}\n')
    with pytest.raises(TagError):
        load_siegel_table(p)
    q = tmp_path / "bad.json"
    q.write_text("[]")
    with pytest.raises(TagError):
        load_half_integral_table(q)


def test_assemble_empty_form_is_zero():
    f = HalfIntegralFormTable(2, F(-5, 2), {})
    p = JacobiPoint(0.1, 0.2, -0.3, 0.05, 1.0)
    per, total = assemble_example("II-2", f, 2, p, form="product")
    assert total == 0 and set(per) == {1, 2, 3, 4}


@pytest.mark.parametrize("case_id,m,w,params", [
    ("II-2", 2, F(-5, 2), {}),
    ("IV-3", -1, F(9, 2), {"delta": 1}),
    ("III-3", -2, F(9, 2), {"n": 2}),
])
def test_product_and_expanded_agree(case_id, m, w, params):
    f = synthetic_form_table(m, w, seed=5)
    p = JacobiPoint(0.2, -0.1, 0.35, -0.15, 0.9)
    _, ex = assemble_example(case_id, f, m, p, form="expanded", params=params)
    _, pr = assemble_example(case_id, f, m, p, form="product", params=params)
    assert abs(ex - pr) < 1e-8 * abs(pr)


@pytest.mark.parametrize("case_id,m,f,params", [
    ("III-1", 1, synthetic_maass_table(1, 0.7j, F(-1, 2)), {}),
    ("II-1", -1, synthetic_maass_table(-1, 0.7j, F(1, 2)), {}),
    ("I-1", -1, synthetic_form_table(-1, F(5, 2)), {}),
    ("II-2", 2, synthetic_form_table(2, F(-5, 2)), {"lambda": (1, -1)}),
    ("III-2", 1, synthetic_form_table(1, F(3, 2)), {"n": 3}),
    ("IV-2", 1, synthetic_form_table(1, F(-3, 2)), {"delta": 0}),
    ("V-1", 1, synthetic_form_table(1, F(5, 2)), {}),
])
def test_out_of_hypothesis_cases_raise(case_id, m, f, params):
    with pytest.raises(CaseError):
        assemble_example(case_id, f, m, JacobiPoint(0, 0, 0, 0, 1), params=params)


def test_case_ids():
    assert len(CASE_IDS) == 10
