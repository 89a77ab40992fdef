import math

import numpy as np
import pytest

from tfloc.errors import DegenerateInputError, DomainError
from tfloc.fourier import ft_at
from tfloc.schemes import InterpolationScheme, Node, rv_scheme
from tfloc.witness import (WitnessProblem, assemble_constraints,
                           outside_support_max, solve_witness, symmetrize,
                           tail_certificate, thin_scheme)

RESIDUAL_TOL = 1e-8
SEP_TOL = 1e-6          # sigma_min / sigma_max floor certifying an empty null space

SCHEME = rv_scheme(12)
THINNED = thin_scheme(SCHEME, 0.2, 3.0, 3.0, seed=20260)


@pytest.fixture(scope="module")
def full_none():
    return solve_witness(WitnessProblem(SCHEME, 3.0, 3.0, 0.22, 0.1, "none"))


@pytest.fixture(scope="module")
def thin_none():
    return solve_witness(WitnessProblem(THINNED, 3.0, 3.0, 0.22, 0.1, "none"))


@pytest.fixture(scope="module")
def full_even():
    return solve_witness(WitnessProblem(SCHEME, 3.0, 3.0, 0.10, 0.1, "even"))


@pytest.fixture(scope="module")
def thin_even():
    return solve_witness(WitnessProblem(THINNED, 3.0, 3.0, 0.10, 0.1, "even"))


@pytest.fixture(scope="module")
def thin_odd():
    return solve_witness(WitnessProblem(THINNED, 3.0, 3.0, 0.10, 0.1, "odd"))


def test_problem_validation():
    with pytest.raises(DomainError):
        WitnessProblem(SCHEME, 1.0, 3.0, 0.22, 0.1)
    with pytest.raises(DomainError):
        WitnessProblem(SCHEME, 3.0, 3.0, 0.0, 0.1)
    with pytest.raises(DomainError):
        WitnessProblem(SCHEME, 3.0, 3.0, 0.22, -0.1)
    with pytest.raises(DomainError):
        WitnessProblem(SCHEME, 3.0, 3.0, 0.22, 0.1, parity="mixed")


def test_problem_geometry():
    p = WitnessProblem(SCHEME, 3.0, 3.0, 0.22, 0.1)
    assert p.D == 36.0
    assert p.eta == pytest.approx(0.1 / 1.1, rel=1e-15)
    assert p.constraint_count == 38
    q = WitnessProblem(SCHEME, 3.0, 3.0, 0.10, 0.1, "even")
    assert q.D == 18.0


def test_full_scheme_is_obstructed(full_none):
    assert full_none.null_dim == 0
    assert full_none.sigma_min > SEP_TOL * full_none.sigma_max
    # no coefficient vector annihilates every constraint here
    assert full_none.residual > 1e-6


def test_thinned_scheme_admits_witness(thin_none):
    r = thin_none
    assert len(r.coefficients) == 34
    assert r.null_dim == 6
    assert r.residual < RESIDUAL_TOL
    assert r.l2 == pytest.approx(1.0 / math.sqrt(6.0), abs=1e-6)
    assert r.l2_target == pytest.approx(1.0 / math.sqrt(6.0), rel=1e-15)
    assert r.sup_floor == pytest.approx(1.0 / 6.0, rel=1e-15)
    assert r.sup_value >= r.sup_floor
    assert r.sup_value == pytest.approx(0.490296, abs=1e-4)
    assert abs(r.sup_x) <= 3.0


def test_witness_coefficients_normalized(thin_none):
    a = thin_none.coefficients
    assert np.linalg.norm(a) == pytest.approx(1.0, abs=1e-12)
    assert np.max(np.abs(a)) <= 1.0 + 1e-12
    lead = a[np.flatnonzero(np.abs(a) > 1e-14)[0]]
    assert lead > 0


def test_witness_confined_to_support(thin_none, thin_even):
    assert outside_support_max(thin_none) == 0.0
    assert outside_support_max(thin_even) == 0.0


def test_even_parity_full_obstructed(full_even):
    assert len(full_even.coefficients) == 17
    assert full_even.null_dim == 0
    assert full_even.sigma_min > SEP_TOL * full_even.sigma_max


def test_even_parity_witness(thin_even):
    r = thin_even
    assert r.null_dim == 3
    assert r.residual < RESIDUAL_TOL
    assert r.l2 == pytest.approx(1.0 / math.sqrt(3.0), abs=1e-6)
    assert r.sup_floor == pytest.approx(1.0 / math.sqrt(18.0), rel=1e-15)
    assert r.sup_value >= r.sup_floor
    assert r.sup_value == pytest.approx(0.700638, abs=1e-4)
    v = r.function.samples
    assert np.array_equal(v, v[::-1])


def test_even_parity_transform_is_real(thin_even):
    xi = np.linspace(-2.0, 2.0, 9)
    ft = ft_at(thin_even.function, xi)
    assert np.max(np.abs(ft.imag)) < 1e-12 * np.max(np.abs(ft.real))


def test_odd_parity_witness(thin_odd):
    r = thin_odd
    assert r.null_dim >= 1
    assert r.residual < RESIDUAL_TOL
    v = r.function.samples
    assert v[len(v) // 2] == 0.0
    assert np.array_equal(v, -v[::-1])
    assert r.l2 == pytest.approx(r.l2_target, abs=1e-6)


def test_assemble_rows_match_counting():
    p = WitnessProblem(THINNED, 3.0, 3.0, 0.22, 0.1)
    A, labels = assemble_constraints(p, p.atoms(), n=4096)
    assert A.shape == (30, 34)
    assert len(labels) == p.constraint_count
    assert labels[0] == ("lambda", 0.0, 0, "re")
    assert {side for side, *_ in labels} == {"lambda", "m"}
    # negative transform entries carry the imaginary part
    parts = {lbl[3] for lbl in labels if lbl[0] == "m" and lbl[1] < 0}
    assert parts == {"im"}


def test_assemble_rejects_empty_atoms():
    p = WitnessProblem(SCHEME, 3.0, 3.0, 0.22, 0.1)
    with pytest.raises(DegenerateInputError):
        assemble_constraints(p, [])


def test_no_constraints_in_range():
    far = InterpolationScheme((Node(5.0),), (Node(5.0),), L=2.0, name="far")
    r = solve_witness(WitnessProblem(far, 2.0, 2.0, 0.3, 0.1))
    assert r.null_dim == len(r.coefficients)
    assert r.residual == 0.0
    assert r.sigma_max == 0.0
    assert r.coefficients[0] == 1.0
    assert np.all(r.coefficients[1:] == 0.0)


def test_tail_certificate(thin_none, full_none):
    rep = tail_certificate(thin_none, n_xi=200)
    assert [k for k, _ in rep.max_by_order] == [0, 1, 2]
    assert all(np.isfinite(m) for _, m in rep.max_by_order)
    assert rep.weighted_sum == pytest.approx(0.257743, abs=1e-4)
    assert len(rep.xi) == 200
    with pytest.raises(DegenerateInputError):
        tail_certificate(full_none)


def test_symmetrize_columns():
    p = WitnessProblem(THINNED, 3.0, 3.0, 0.10, 0.1, "even")
    cols = symmetrize(p, p.atoms())
    x = np.linspace(0.1, 2.9, 7)
    assert np.allclose(cols(x), cols(-x), atol=0, rtol=0)
    with pytest.raises(DomainError):
        symmetrize(WitnessProblem(SCHEME, 3.0, 3.0, 0.22, 0.1), [])


def test_thinning_contract():
    with pytest.raises(DomainError):
        thin_scheme(SCHEME, -0.1, 3.0, 3.0, seed=0)
    with pytest.raises(DomainError):
        thin_scheme(SCHEME, 1.0, 3.0, 3.0, seed=0)
    again = thin_scheme(SCHEME, 0.2, 3.0, 3.0, seed=20260)
    assert again.lambda_nodes == THINNED.lambda_nodes
    assert again.m_nodes == THINNED.m_nodes
    assert again.name == "rv-thinned"
    other = thin_scheme(SCHEME, 0.2, 3.0, 3.0, seed=777)
    assert (other.lambda_nodes, other.m_nodes) != (THINNED.lambda_nodes, THINNED.m_nodes)
    noop = thin_scheme(SCHEME, 0.0, 3.0, 3.0, seed=3)
    assert len(noop.lambda_nodes) == len(SCHEME.lambda_nodes)


def test_thinning_preserves_out_of_range_nodes():
    before = [nd for nd in SCHEME.lambda_nodes if abs(nd.point) > 3.0]
    after = [nd for nd in THINNED.lambda_nodes if abs(nd.point) > 3.0]
    assert before == after and len(before) == 6
    # removed entries come in whole +- orbits
    removed = set(SCHEME.m_nodes) - set(THINNED.m_nodes)
    for nd in removed:
        assert nd.point == 0.0 or Node(-nd.point, nd.order) in removed
