import itertools
import math

import numpy as np
import pytest

from greedysum import (
    CoefVector,
    DomainError,
    InputError,
    SpaceSpec,
    alpha_constants,
    dual_norm,
    dual_norm_method,
    norm,
    norm_rows,
)
from greedysum.spaces import dense_row, resolve_weight

from conftest import oracle_summing_norm, random_vector, small_catalog


def test_lp2_three_four_five():
    assert norm(SpaceSpec.lp(2, 8), CoefVector({1: 3, 2: -4})) == pytest.approx(5.0, rel=1e-12)


def test_summing_alternating_tail_sums():
    x = CoefVector({1: 1, 2: -1, 3: 1, 4: -1})
    space = SpaceSpec.summing_c0(8)
    assert norm(space, x) == pytest.approx(oracle_summing_norm(x), rel=1e-12)
    assert norm(space, x) == pytest.approx(1.0, rel=1e-12)


def test_summing_constant_block():
    x = CoefVector({1: 1, 2: 1, 3: 1, 4: 1})
    assert norm(SpaceSpec.summing_c0(8), x) == pytest.approx(4.0, rel=1e-12)


def test_summing_norm_against_oracle_random(rng):
    space = SpaceSpec.summing_c0(32)
    for _ in range(300):
        x = random_vector(rng, max_index=32)
        assert norm(space, x) == pytest.approx(oracle_summing_norm(x), rel=1e-12)


def test_lorentz_harmonic_rearranged_pair():
    x = CoefVector({5: 2, 9: 1})
    assert norm(SpaceSpec.lorentz("harmonic", 16), x) == pytest.approx(2.5, rel=1e-12)


def test_weighted_l1_geometric():
    space = SpaceSpec.weighted_l1({"kind": "geometric", "r": 0.5}, 8)
    assert norm(space, CoefVector({1: 1, 3: 2})) == pytest.approx(0.5 + 2 * 0.125, rel=1e-12)


def test_max_functionals_norm_and_degenerate_list():
    f = CoefVector({1: 1.0, 2: 1.0})
    space = SpaceSpec.max_functionals([f], 8)
    assert norm(space, CoefVector({1: 1, 2: 1})) == pytest.approx(2.0)
    # the sup-norm term keeps degenerate lists a norm: f vanishes on e_3
    assert norm(space, CoefVector({3: 0.7})) == pytest.approx(0.7)


def test_norm_errors():
    space = SpaceSpec.lp(2, 4)
    with pytest.raises(DomainError):
        norm(space, CoefVector({5: 1.0}))
    with pytest.raises(InputError):
        CoefVector({1: float("nan")})
    with pytest.raises(InputError):
        CoefVector({1: float("inf")})


# -- dual norms -------------------------------------------------------------

def test_dual_norm_lp2_orthonormal():
    assert dual_norm(SpaceSpec.lp(2, 8), 7) == 1.0


def test_dual_norm_summing_vertex_enumeration_oracle():
    # The coefficient ball is the linear image of the tail-sum cube; the
    # max of a_3 = t_3 - t_4 over the cube sits at a vertex.
    space = SpaceSpec.summing_c0(6)
    best = 0.0
    for tails in itertools.product([-1.0, 1.0], repeat=6):
        tails = list(tails) + [0.0]
        a3 = tails[2] - tails[3]
        best = max(best, abs(a3))
    assert dual_norm(space, 3) == pytest.approx(best) == 2.0


def test_dual_norm_weighted_l1_reciprocal():
    space = SpaceSpec.weighted_l1({"kind": "geometric", "r": 0.5}, 8)
    assert dual_norm(space, 3) == pytest.approx(8.0, rel=1e-12)


def test_dual_norm_max_functionals_lp_against_sampling(rng):
    f1 = CoefVector({1: 1.0, 2: -0.5})
    f2 = CoefVector({2: 0.75, 3: 0.25})
    space = SpaceSpec.max_functionals([f1, f2], 4)
    assert dual_norm_method(space) == "linear-program"
    for n in range(1, 5):
        value = dual_norm(space, n)
        # sampled feasible points never beat the LP optimum
        for _ in range(2000):
            x = rng.uniform(-1, 1, size=4)
            v = CoefVector({i + 1: float(c) for i, c in enumerate(x) if c != 0.0})
            if norm(space, v) <= 1.0:
                assert abs(v.coef(n)) <= value + 1e-9
        # and the optimum is attained by some unit-ball vector (scale check)
        assert value >= 1.0 - 1e-12


def test_dual_norm_out_of_range():
    with pytest.raises(DomainError):
        dual_norm(SpaceSpec.lp(2, 4), 5)


# -- alpha constants ---------------------------------------------------------

def test_alpha_lp2():
    a = alpha_constants(SpaceSpec.lp(2, 8))
    assert (a.alpha1, a.alpha2, a.alpha3) == (1.0, 1.0, 1.0)


def test_alpha_summing():
    a = alpha_constants(SpaceSpec.summing_c0(8))
    assert (a.alpha1, a.alpha2, a.alpha3) == (1.0, 2.0, 2.0)


def test_alpha_circ_renorm_normalized():
    space = SpaceSpec.circ_renorm(SpaceSpec.lorentz("harmonic", 8))
    a = alpha_constants(space)
    assert a.alpha1 == pytest.approx(1.0, rel=1e-12)
    assert a.alpha2 == pytest.approx(1.0, rel=1e-12)
    assert a.alpha3 == pytest.approx(1.0, rel=1e-12)
    for n in range(1, 9):
        assert norm(space, CoefVector({n: 1.0})) == pytest.approx(1.0, rel=1e-12)
        assert dual_norm(space, n) == pytest.approx(1.0, rel=1e-12)


def test_alpha3_bounded_by_product(rng):
    for space in small_catalog(8).values():
        a = alpha_constants(space)
        assert a.alpha3 <= a.alpha1 * a.alpha2 + 1e-12


# -- norm axioms -------------------------------------------------------------

def all_test_spaces(dim=8):
    spaces = small_catalog(dim)
    spaces["max_functionals"] = SpaceSpec.max_functionals(
        [CoefVector({1: 1.0, 2: 1.0, 3: 1.0}), CoefVector({2: -1.0, 4: 0.5})], dim)
    spaces["circ_summing"] = SpaceSpec.circ_renorm(SpaceSpec.summing_c0(dim))
    return spaces


def test_homogeneity_all_families(rng):
    for space in all_test_spaces(16).values():
        for _ in range(200):
            x = random_vector(rng, max_index=16)
            c = float(rng.normal()) * 3.0
            if c == 0.0:
                continue
            assert norm(space, c * x) == pytest.approx(abs(c) * norm(space, x), rel=1e-12)


def test_triangle_inequality_batched(rng):
    cols = np.arange(1, 17)
    for space in all_test_spaces(16).values():
        a = rng.normal(size=(10_000, 16))
        b = rng.normal(size=(10_000, 16))
        na = norm_rows(space, a, cols)
        nb = norm_rows(space, b, cols)
        nab = norm_rows(space, a + b, cols)
        assert np.all(nab <= na + nb + 1e-9 * (na + nb + 1.0))


def test_norm_zero_only_at_zero(rng):
    for space in all_test_spaces(16).values():
        assert norm(space, CoefVector()) == 0.0
        for _ in range(100):
            x = random_vector(rng, max_index=16)
            assert norm(space, x) > 0.0


def test_scalar_matches_batched(rng):
    cols = np.arange(1, 17)
    for space in all_test_spaces(16).values():
        m = rng.normal(size=(64, 16))
        batched = norm_rows(space, m, cols)
        for i in range(64):
            x = CoefVector({j + 1: float(m[i, j]) for j in range(16) if m[i, j] != 0.0})
            assert norm(space, x) == pytest.approx(float(batched[i]), rel=1e-12)
        row = dense_row(CoefVector({3: 1.5, 10: -0.5}), cols)
        assert norm_rows(space, row[None, :], cols)[0] == pytest.approx(
            norm(space, CoefVector({3: 1.5, 10: -0.5})), rel=1e-12)


def test_circ_renorm_sandwich(rng):
    inner = SpaceSpec.summing_c0(16)
    space = SpaceSpec.circ_renorm(inner)
    a = alpha_constants(inner)
    for _ in range(500):
        x = random_vector(rng, max_index=16)
        circ = norm(space, x)
        plain = norm(inner, x)
        assert circ >= plain / a.alpha1 - 1e-12 * plain
        assert circ <= a.alpha2 * plain + 1e-12 * plain


def test_lorentz_rearrangement_and_sign_invariance(rng):
    space = SpaceSpec.lorentz("harmonic", 32)
    for _ in range(300):
        x = random_vector(rng, max_index=16)
        perm = {n: int(m) for n, m in zip(sorted(x.support),
                                          rng.permutation(np.arange(17, 17 + len(x))))}
        y = CoefVector({perm[n]: float(rng.choice([-1.0, 1.0])) * c for n, c in x.items()})
        assert norm(space, x) == pytest.approx(norm(space, y), rel=1e-12)


# -- serialization ------------------------------------------------------------

def test_config_round_trip():
    specs = list(all_test_spaces(8).values()) + [
        SpaceSpec.lorentz([1.0, 0.5, 0.25, 0.2, 0.2, 0.1, 0.1, 0.05], 8),
    ]
    for space in specs:
        again = SpaceSpec.from_config(space.to_config())
        assert again == space
        assert again.label() == space.label()


def test_weight_validation():
    with pytest.raises(InputError):
        SpaceSpec.lorentz([1.0, 2.0, 0.5, 0.5], 4)  # increasing step
    with pytest.raises(InputError):
        SpaceSpec.weighted_l1([1.0, 0.0, 0.5, 0.5], 4)  # zero weight
    with pytest.raises(InputError):
        SpaceSpec.lorentz([1.0, 0.5], 4)  # shorter than the cap
    with pytest.raises(InputError):
        SpaceSpec.max_functionals([], 4)
    w = resolve_weight(("geometric", 0.5), 4)
    assert list(w[1:]) == [0.5, 0.25, 0.125, 0.0625]


def test_lp_p_validation():
    with pytest.raises(InputError):
        SpaceSpec.lp(0.5, 4)
    assert SpaceSpec.lp("inf", 4).p == math.inf
