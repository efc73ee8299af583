import math

import numpy as np
import pytest

from normgrad import (
    ContractViolation,
    DegeneratePointError,
    Huber,
    L2Norm,
    LogSumExp,
    PowerNorm,
    Quadratic,
    check_descent_inequality,
    check_grad_bound,
    finite_diff_grad,
    local_holder_constant,
    make_problem,
    problem_from_config,
    sample_holder_constant,
)
from normgrad.bench import canonical_problems


def test_quadratic_values():
    p = Quadratic(1)
    assert p.eval(np.array([3.0])) == 4.5
    assert p.grad(np.array([3.0]))[0] == 3.0
    assert p.eval(p.minimizer) == p.optimum == 0.0


def test_power_norm_values():
    p = PowerNorm(0.5, 1)
    assert p.eval(np.array([1.0])) == pytest.approx(2.0 / 3.0, rel=1e-15)
    # ||x||^(nu-1) x = 4^(-1/2) * 4 = 2
    assert p.grad(np.array([4.0]))[0] == pytest.approx(2.0, rel=1e-15)
    assert p.grad(p.minimizer)[0] == 0.0


def test_power_norm_nu_one_matches_quadratic():
    p1 = PowerNorm(1.0, 3)
    q = Quadratic(3)
    rng = np.random.default_rng(0)
    for _ in range(50):
        x = rng.standard_normal(3)
        assert p1.eval(x) == pytest.approx(q.eval(x), rel=1e-15)
        assert np.allclose(p1.grad(x), q.grad(x), rtol=1e-15)
    assert p1.spec.l_nu == q.spec.l_nu == 1.0


def test_power_norm_nu_zero_matches_l2norm():
    p0 = PowerNorm(0.0, 3)
    l2 = L2Norm(3)
    rng = np.random.default_rng(1)
    for _ in range(50):
        x = rng.standard_normal(3)
        assert p0.eval(x) == pytest.approx(l2.eval(x), rel=1e-15)
        assert np.allclose(p0.grad(x), l2.grad(x), rtol=1e-14)
    assert p0.spec.l_nu == l2.spec.l_nu == 2.0
    assert p0.grad_norm_bound == l2.grad_norm_bound == 1.0


def test_l2norm_subgradient_zero_at_kink():
    p = L2Norm(4)
    assert np.array_equal(p.grad(p.minimizer), np.zeros(4))
    x = np.array([3.0, 0.0, 4.0, 0.0])
    g = p.grad(x)
    assert np.allclose(g, x / 5.0, rtol=1e-15)


def test_huber_regions():
    p = Huber(1, delta=1.0)
    # quadratic region: f = r^2/2, grad = z
    assert p.eval(np.array([0.5])) == 0.125
    assert p.grad(np.array([0.5]))[0] == 0.5
    # linear region: f = r - 1/2, grad has unit norm
    assert p.eval(np.array([10.0])) == 9.5
    assert p.grad(np.array([10.0]))[0] == 1.0
    assert p.spec.l_nu == 1.0
    p2 = Huber(2, delta=0.25)
    assert p2.spec.l_nu == 4.0


def test_log_sum_exp_minimum_is_exact():
    p = LogSumExp(5)
    assert p.eval(p.minimizer) == p.optimum == math.log(10.0)
    assert np.array_equal(p.grad(p.minimizer), np.zeros(5))


def test_minimizer_shift():
    center = np.array([2.0, -1.0])
    for p in (Quadratic(2, center), PowerNorm(0.5, 2, center), L2Norm(2, center),
              Huber(2, 1.0, center), LogSumExp(2, center)):
        assert p.eval(center) == p.optimum
        assert np.allclose(p.grad(center), 0.0)
        assert p.gap(center) == 0.0


def test_dimension_mismatch_raises():
    p = Quadratic(3)
    with pytest.raises(ContractViolation):
        p.eval(np.zeros(2))
    with pytest.raises(ContractViolation):
        p.grad(np.zeros(4))


def test_finite_diff_matches_analytic_examples():
    q = Quadratic(1)
    fd = finite_diff_grad(q, np.array([2.0]), h=1e-6)
    assert fd[0] == pytest.approx(2.0, abs=1e-6)

    lse = LogSumExp(3)
    # at the center both the analytic gradient and the symmetric stencil vanish
    assert np.array_equal(finite_diff_grad(lse, lse.minimizer, h=1e-6), np.zeros(3))
    x = np.array([0.3, -0.2, 0.9])
    fd = lse.grad(x) - finite_diff_grad(lse, x, h=1e-6)
    assert np.linalg.norm(fd) <= 1e-5 * np.linalg.norm(lse.grad(x))

    pn = PowerNorm(1.0, 2)
    x = np.array([1.5, -0.5])
    assert np.allclose(finite_diff_grad(pn, x), Quadratic(2).grad(x), atol=1e-6)


def test_descent_inequality_quadratic_is_equality():
    p = Quadratic(3)
    rng = np.random.default_rng(3)
    for _ in range(100):
        x = rng.uniform(-10, 10, 3)
        y = rng.uniform(-10, 10, 3)
        check = check_descent_inequality(p, x, y)
        assert check.passed
        assert abs(check.residual) <= 1e-9 * (1.0 + abs(p.eval(y)))


@pytest.mark.parametrize("problem", canonical_problems(), ids=lambda p: p.family)
def test_descent_inequality_random_pairs(problem):
    rng = np.random.default_rng(4)
    for _ in range(2000):
        x = rng.uniform(-10, 10, problem.dimension)
        y = rng.uniform(-10, 10, problem.dimension)
        assert check_descent_inequality(problem, x, y).passed


def test_grad_bound_examples():
    q = Quadratic(1)
    check = check_grad_bound(q, np.array([3.0]))
    # quadratic saturates: lhs = 9, rhs = 2 * 1 * 4.5 = 9
    assert check.passed
    assert check.lhs == pytest.approx(9.0, rel=1e-12)
    assert check.rhs == pytest.approx(9.0, rel=1e-12)

    pn = PowerNorm(0.5, 1)
    check = check_grad_bound(pn, np.array([1.0]))
    # lhs = 1, rhs = 3 * (2^(1/2))^2 * (2/3) = 4
    assert check.passed
    assert check.lhs == pytest.approx(1.0, rel=1e-12)
    assert check.rhs == pytest.approx(4.0, rel=1e-12)

    at_min = check_grad_bound(q, q.minimizer)
    assert at_min.passed and at_min.lhs == 0.0 and at_min.rhs == 0.0


def test_grad_bound_rejects_nu_zero():
    with pytest.raises(ContractViolation):
        check_grad_bound(L2Norm(2), np.ones(2))


@pytest.mark.parametrize("problem", [p for p in canonical_problems() if p.spec.nu > 0],
                         ids=lambda p: p.family)
def test_grad_bound_random_points(problem):
    rng = np.random.default_rng(5)
    for _ in range(2000):
        assert check_grad_bound(problem, rng.uniform(-10, 10, problem.dimension)).passed


def test_sample_holder_constant_quadratic_exact_ratio():
    p = Quadratic(3)
    v = sample_holder_constant(p, 500, seed=0)
    assert v == pytest.approx(1.0, rel=1e-12)


def test_sample_holder_constant_respects_declared():
    for p in canonical_problems():
        for seed in range(3):
            assert sample_holder_constant(p, 500, seed) <= p.spec.l_nu + 1e-9


def test_sample_holder_constant_single_pair_nonnegative():
    for p in canonical_problems():
        v = sample_holder_constant(p, 1, seed=0)
        assert math.isfinite(v) and v >= 0.0


def test_sample_holder_constant_power_norm_straddling_limit():
    # scalar pairs straddling the center approach 2^(1-nu)
    p = PowerNorm(0.5, 1)
    v = sample_holder_constant(p, 20_000, seed=7)
    assert v <= math.sqrt(2.0) + 1e-9
    assert v >= math.sqrt(2.0) - 0.05


def test_local_holder_constant_examples():
    q = Quadratic(1)
    assert local_holder_constant(q, np.array([3.0])) == pytest.approx(1.0, rel=1e-12)

    h = Huber(1, delta=1.0)
    # linear region: ||g|| = 1, gap = 9.5, L(x) = 1 / (2 * 9.5)
    assert local_holder_constant(h, np.array([10.0])) == pytest.approx(1.0 / 19.0, rel=1e-12)

    pn = PowerNorm(0.5, 1)
    v = local_holder_constant(pn, np.array([1.0]))
    # ||g||^1.5 / (3^0.5 * (2/3)^0.5) = 1/sqrt(2)
    assert v == pytest.approx(1.0 / math.sqrt(2.0), rel=1e-12)
    assert v <= pn.spec.l_nu


def test_local_holder_constant_errors():
    q = Quadratic(2)
    with pytest.raises(DegeneratePointError):
        local_holder_constant(q, q.minimizer)
    with pytest.raises(ContractViolation):
        local_holder_constant(L2Norm(2), np.ones(2))


@pytest.mark.parametrize("problem", [p for p in canonical_problems() if p.spec.nu > 0],
                         ids=lambda p: p.family)
def test_local_constant_below_global(problem):
    rng = np.random.default_rng(6)
    for _ in range(1000):
        x = rng.uniform(-10, 10, problem.dimension)
        if problem.gap(x) <= 0.0:
            continue
        assert local_holder_constant(problem, x) <= problem.spec.l_nu + 1e-9


def test_convexity_random_segments():
    rng = np.random.default_rng(8)
    for problem in canonical_problems():
        for _ in range(500):
            x = rng.uniform(-10, 10, problem.dimension)
            y = rng.uniform(-10, 10, problem.dimension)
            lam = rng.uniform()
            mid = problem.eval(lam * x + (1 - lam) * y)
            assert mid <= lam * problem.eval(x) + (1 - lam) * problem.eval(y) + 1e-9


def test_make_problem_and_config_round_trip():
    p = make_problem("huber", 3, delta=0.5)
    assert isinstance(p, Huber) and p.delta == 0.5
    with pytest.raises(ContractViolation):
        make_problem("power_norm", 2)
    with pytest.raises(ContractViolation):
        make_problem("nope", 2)
    with pytest.raises(ContractViolation):
        make_problem("quadratic", 2, nu=0.5)

    rec = {"family": "power_norm", "dimension": 4,
           "minimizer": [1.0, 0.0, 0.0, 0.0], "parameters": {"nu": 0.5}}
    p2 = problem_from_config(rec)
    assert isinstance(p2, PowerNorm) and p2.nu == 0.5
    assert p2.config_record()["minimizer"] == [1.0, 0.0, 0.0, 0.0]

    p3 = problem_from_config({"family": "quadratic", "dimension": 3,
                              "minimizer": "random", "seed": 11})
    p4 = problem_from_config({"family": "quadratic", "dimension": 3,
                              "minimizer": "random", "seed": 11})
    assert np.array_equal(p3.minimizer, p4.minimizer)
