import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from suqdirac.dirac import (
    CLASSICAL,
    ClosureError,
    DiracParams,
    LinearOp,
    ReductionError,
    assemble,
    case_of,
    check_reduction,
    classical_limit_sweep,
    classical_matrix,
    classical_problems,
    classical_spectrum,
    closed_form_matrix,
    closure_check,
    diagonal_eigenvalue,
    dirac_matrix,
    lambda_pm_squared,
    module_spectrum,
    parse_grid,
    reduce,
    reduce_generic,
    reduce_highest,
    reduce_lowest,
    spectrum_closed_form,
    spectrum_numeric,
    verify_closed_form,
)
from suqdirac.dirac import report
from suqdirac.dirac.spectrum import eigen_numeric, numeric_matrix
from suqdirac.hodge import coefficients
from suqdirac.qscalar import I, ONE, Q, ZERO, QScalar, qnum, sqrt
from suqdirac.qscalar.ops import is_zero
from suqdirac.uqsu2 import MINUS, PLUS, Z, ModuleVector, Weight, eps, phi


def weights(max_twice_j=6):
    return [Weight(Fraction(tj, 2), N) for tj in range(max_twice_j + 1) for N in range(-tj, tj + 1, 2)]


WEIGHTS = weights()
GENERIC = [w for w in WEIGHTS if case_of(w) == "generic"]
Q_POINTS = (0.3, 0.5, 0.9)
qp = QScalar.q_pow


def ev(x, q0):
    return complex(x.evaluate(q0)) if hasattr(x, "evaluate") else complex(x)


# the operator -----------------------------------------------------------------


def test_assembled_matrix_equals_closed_form(D, ck_cfg):
    assert D == closed_form_matrix(ck_cfg)
    assert D.nonzero_count() == 13


def test_first_column_and_corner(D, ck_cfg):
    X = LinearOp.x
    assert [D[i, 0] for i in (1, 2, 3)] == [X(MINUS), X(Z), X(PLUS)]
    assert D[0, 3] == X(MINUS, ck_cfg.params.beta)
    assert D[0, 0].is_zero() and D[1, 3].is_zero() and D[3, 1].is_zero()


def test_classical_limit_of_operator(D):
    # A -> 1 and xi -> -1, so the q = 1 matrix is the classical one
    C = classical_matrix()
    for i in range(4):
        for j in range(4):
            for key in (None, MINUS, PLUS, Z):
                assert ev(D[i, j].coefficient(key), 1.0) == pytest.approx(complex(C[i, j].coefficient(key).evaluate(1.0)), abs=1e-12)


@pytest.mark.parametrize("sign", [-1, 1])
def test_closure_holds_for_both_kappa_roots(ck_cfg, sign):
    params = DiracParams.default(ck_cfg, sign)
    assert closure_check(params, ck_cfg) == {}
    assert params.closure_defects(coefficients(ck_cfg)[0]) == (ZERO, ZERO)


@pytest.mark.parametrize(
    "change",
    [dict(eps3=QScalar(2)), dict(eps1=-ONE), dict(eps2=ONE), dict(kappa=ONE), dict(eps1=QScalar(2), eps3=QScalar(2))],
)
def test_closure_fails_when_violated(ck_cfg, change):
    base = DiracParams.default(ck_cfg)
    params = DiracParams(**{**dict(eps1=base.eps1, eps2=base.eps2, eps3=base.eps3, kappa=base.kappa), **change})
    res = closure_check(params, ck_cfg)
    assert res
    with pytest.raises(ClosureError):
        dirac_matrix(params, ck_cfg)
    M, residual = assemble(params, ck_cfg)
    assert residual


# reduction -------------------------------------------------------------------------


def generic_template(w, cfg):
    """The reduced matrix on (sigma, mu, rho, mu~), derived by hand from the operator."""
    A, xi = coefficients(cfg)
    t, a = A / xi, cfg.params.alpha
    J, N = w.J, w.N
    h, qh = qnum(Fraction(N, 2)), qp(Fraction(-N, 2))
    ph, ep = phi(J, N), eps(J, N)
    return [
        [ZERO, -a / 2 * qp(3 - N) * ph, 2 * I * Q ** 3 / (1 + Q) * a * h * qh, -a / 2 * qp(1 - N) * ep],
        [ONE, -t * I / Q * h * qh, t * 2 / (1 + Q), ZERO],
        [I / 2 * h * (1 + 1 / Q) * qh, -t * (1 + Q) / 4 * qp(-1 - N) * ph, I / 2 * t * (1 + qp(-N)), t * (1 + Q) / 4 * qp(-1 - N) * ep],
        [ONE, ZERO, -t * 2 * Q ** 2 / (1 + Q), t * I * Q * h * qh],
    ]


def highest_template(J, cfg):
    A, xi = coefficients(cfg)
    t, p, N = A / xi, cfg.params, int(2 * J)
    return [
        [ZERO, I / 2 * Q ** 2 * p.gamma * (qp(-N) - 1) / (1 - Q), -p.beta / 2 * qp(1 - N) * qnum(N)],
        [I / 2 * (qp(-N) - 1) / (1 - Q), t * I / 2 * (1 + qp(-N)), t / 4 * qp(-1 - N) * (1 + Q) * qnum(N)],
        [ONE, -t * 2 * Q ** 2 / (1 + Q), I * t * Q ** 2 * (qp(-N) - 1) / (1 - Q ** 2)],
    ]


def lowest_template(J, cfg):
    A, xi = coefficients(cfg)
    t, p, n = A / xi, cfg.params, int(2 * J)
    return [
        [ZERO, -p.alpha / 2 * qp(3 + n) * qnum(n), Q ** 2 * p.gamma * I / 2 * (qp(n) - 1) / (1 - Q)],
        [ONE, I * t * (1 - qp(n)) / (1 - Q ** 2), t * 2 / (1 + Q)],
        [I / 2 * (qp(n) - 1) / (1 - Q), -t / 4 * (1 + Q) * qp(n - 1) * qnum(n), t * I / 2 * (1 + qp(n))],
    ]


def same(M, T):
    return all(is_zero(M[i][j] - T[i][j]) for i in range(len(T)) for j in range(len(T)))


@pytest.mark.parametrize("w", WEIGHTS, ids=str)
def test_reduced_matrix_matches_template(D, ck_cfg, w):
    case = case_of(w)
    if case == "generic":
        assert same(reduce_generic(D, w), generic_template(w, ck_cfg))
    elif case == "highest":
        assert same(reduce_highest(D, w.J), highest_template(w.J, ck_cfg))
    else:
        assert same(reduce_lowest(D, w.J), lowest_template(w.J, ck_cfg))


@pytest.mark.parametrize("w", WEIGHTS, ids=str)
def test_ansatz_is_invariant(D, w):
    assert check_reduction(D, w) == []


def test_reduction_examples(D, ck_cfg):
    A, xi = coefficients(ck_cfg)
    a = ck_cfg.params.alpha
    M = reduce_generic(D, Weight(1, 0))
    assert M[1][0] == ONE and is_zero(M[0][2]) and M[2][2] == I * A / xi
    assert M[0][1] == -a / 2 * Q ** 3 * (Q + 1 / Q)
    assert reduce_highest(D, 2)[2][1] == -A / xi * 2 * Q ** 2 / (1 + Q)
    assert reduce_lowest(D, Fraction(3, 2))[0][1] == -a / 2 * Q ** 6 * qnum(3)


def test_boundary_weight_rejected_by_generic(D):
    with pytest.raises(ReductionError):
        reduce_generic(D, Weight(1, 2))
    with pytest.raises(ReductionError):
        reduce_generic(D, Weight(0, 0))


def test_j_zero(D, ck_cfg):
    M = reduce(D, Weight(0, 0))
    # every q-number entry vanishes; the A/xi terms survive
    assert all(is_zero(M[0][j]) for j in range(3))
    values = [r.value for r in spectrum_closed_form(Weight(0, 0), ck_cfg, D)]
    assert values.count(ZERO) == 2


# closed forms --------------------------------------------------------------------


@pytest.mark.parametrize("w", WEIGHTS, ids=str)
def test_closed_forms_are_exact_eigenpairs(D, ck_cfg, w):
    assert verify_closed_form(w, ck_cfg, D) == []


@pytest.mark.parametrize("w", WEIGHTS, ids=str)
def test_record_count_matches_dimension(D, ck_cfg, w):
    recs = spectrum_closed_form(w, ck_cfg, D)
    reduced = [r for r in recs if r.kind == "reduced"]
    assert len(reduced) == (4 if case_of(w) == "generic" else 3)
    assert len(recs) == 4


def test_j1_n0_value(D_alpha1, ck_alpha1):
    lam2 = lambda_pm_squared(Weight(1, 0), ck_alpha1)
    assert lam2 == -((1 + Q ** 2) ** 2) / 2
    plus = next(r for r in spectrum_closed_form(Weight(1, 0), ck_alpha1, D_alpha1) if r.label == "lambda+")
    assert ev(plus.value, 0.5) == pytest.approx(0.8838834764831844j)
    assert ev(plus.value, 1.0) == pytest.approx(1j * 2 ** 0.5)


@pytest.mark.parametrize("tj", range(7))
def test_specialization_to_boundary(ck_cfg, tj):
    J = Fraction(tj, 2)
    a = ck_cfg.params.alpha
    top = lambda_pm_squared(Weight(J, tj), ck_cfg)
    bottom = lambda_pm_squared(Weight(J, -tj), ck_cfg)
    assert top == -(a / 2) * qp(1 - tj) * (qnum(tj) + 2 * Q * qnum(J) ** 2)
    assert bottom == -(a / 2) * qp(1 + tj) * (Q ** 2 * qnum(tj) + 2 * Q * qnum(J) ** 2)


@pytest.mark.parametrize("w", [w for w in WEIGHTS if case_of(w) != "generic"], ids=str)
def test_diagonal_action(D, ck_cfg, w):
    rec = next(r for r in spectrum_closed_form(w, ck_cfg, D) if r.kind == "diagonal")
    assert diagonal_eigenvalue(D, w) == rec.value
    comps = [ModuleVector(w.J) for _ in range(4)]
    comps[rec.slots[0]] = ModuleVector.basis(w)
    assert D.apply(comps) == [v.scale(rec.value) for v in comps]


@pytest.mark.parametrize("q0", Q_POINTS)
def test_numeric_agreement(D_alpha1, ck_alpha1, q0):
    worst = 0.0
    for w in WEIGHTS:
        for r in spectrum_numeric(w, ck_alpha1, q0, D_alpha1):
            worst = max(worst, r.abs_err)
            assert r.eigvec_err is None or r.eigvec_err < 1e-7
    assert worst <= 1e-9


def full_matrix(D, J, q0):
    """D on every component of the J-module, as a dense numeric matrix."""
    Ns = list(range(-int(2 * J), int(2 * J) + 1, 2))
    index = [(s, N) for s in range(4) for N in Ns]
    out = np.zeros((len(index), len(index)), dtype=complex)
    for col, (s, N) in enumerate(index):
        comps = [ModuleVector(J) for _ in range(4)]
        comps[s] = ModuleVector.basis(Weight(J, N))
        image = D.apply(comps)
        for row, (s2, N2) in enumerate(index):
            out[row, col] = ev(image[s2].component(N2), q0)
    return out


@pytest.mark.parametrize("tj", range(5))
def test_spectrum_is_complete(D, ck_cfg, tj):
    J, q0 = Fraction(tj, 2), 0.6
    full = np.sort_complex(np.linalg.eigvals(full_matrix(D, J, q0)))
    closed = np.sort_complex(np.array([ev(r.value, q0) for _, r in module_spectrum(J, ck_cfg, D)]))
    assert len(closed) == len(full) == 4 * (tj + 1)
    # match as multisets
    left = list(full)
    for z in closed:
        k = min(range(len(left)), key=lambda i: abs(left[i] - z))
        assert abs(left.pop(k) - z) < 1e-6


def test_j_zero_module_records_are_eigenvectors(D, ck_cfg):
    for w, r in module_spectrum(0, ck_cfg, D):
        comps = [ModuleVector(0) for _ in range(4)]
        comps[r.slots[0]] = ModuleVector.basis(w)
        assert D.apply(comps) == [v.scale(r.value) for v in comps]


def test_eigen_numeric_of_zero_matrix():
    assert np.all(eigen_numeric(np.zeros((3, 3))) == 0)


# classical side ------------------------------------------------------------------


@pytest.mark.parametrize("w", WEIGHTS, ids=str)
def test_classical_records_are_eigenpairs(w):
    assert classical_problems(w) == []


def test_classical_generic_values():
    vals = {r.label: r.value for r in classical_spectrum(Weight(1, 0))}
    assert vals["lambda+"] == I * sqrt(QScalar(2)) and vals["lambda-"] == -I * sqrt(QScalar(2))
    assert vals["lambda'-"] == I and vals["lambda'+"] == -2 * I


@pytest.mark.parametrize("tj", range(1, 7))
def test_classical_boundary_values(tj):
    J = Fraction(tj, 2)
    for N in (tj, -tj):
        recs = classical_spectrum(Weight(J, N))
        assert [r.value for r in recs if r.label in ("third", "diagonal")] == [-I * (J + 1)] * 2
    diag = next(r for r in classical_spectrum(Weight(J, tj)) if r.kind == "diagonal")
    assert diag.slots == (3,)


@pytest.mark.parametrize("w", WEIGHTS, ids=str)
def test_quantum_reduction_tends_to_classical(D_alpha1, w):
    Mq = numeric_matrix(reduce(D_alpha1, w), 1.0)
    Mc = numeric_matrix(reduce(classical_matrix(), w, prov=CLASSICAL), 1.0)
    assert np.allclose(Mq, Mc, atol=1e-12)


@pytest.mark.parametrize("w", WEIGHTS, ids=str)
def test_limit_sweep(D_alpha1, ck_alpha1, w):
    sweep = classical_limit_sweep(w, ck_alpha1, parse_grid("0.9:0.999:10"), D_alpha1)
    assert sweep.ok()


def test_parse_grid():
    g = parse_grid("0.9:0.999:10")
    assert len(g) == 10 and g[0] == 0.9 and g[-1] == pytest.approx(0.999)
    for bad in ("0.5:1.5:3", "1:2", "a:b:c", "0.9:0.99:1", "0:0.5:3"):
        with pytest.raises(ValueError):
            parse_grid(bad)


# reports ----------------------------------------------------------------------------


def test_reports_are_byte_stable(D_alpha1, ck_alpha1):
    reps = [report.spectrum_report(w, ck_alpha1, 0.5, D_alpha1) for w in WEIGHTS[:6]]
    again = [report.spectrum_report(w, ck_alpha1, 0.5, D_alpha1) for w in WEIGHTS[:6]]
    assert report.to_json(reps) == report.to_json(again)
    assert report.to_csv(reps) == report.to_csv(again)
    data = json.loads(report.to_json(reps))
    assert set(data[0]) >= {"q", "J", "N", "case", "records"}
    assert set(data[0]["records"][0]) >= {"lambda_closed", "lambda_numeric", "abs_err", "eigvec_ratios"}
    assert report.to_csv(reps).splitlines()[0] == ",".join(report.CSV_COLUMNS)


def test_table_truncates_long_expressions(ck_alpha1, D_alpha1):
    text = report.to_table([report.spectrum_report(Weight(3, 2), ck_alpha1, None, D_alpha1)])
    assert all(len(line) <= report.TABLE_WIDTH + 60 for line in text.splitlines())


@given(st.text(min_size=0, max_size=400))
def test_truncate(s):
    out = report.truncate(s)
    assert len(out) <= report.TABLE_WIDTH
    if len(s) <= report.TABLE_WIDTH:
        assert out == s
    else:
        assert report.truncate(s) == out
