import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lorentzlab.metrics import (
    BumpMinkowski,
    Minkowski,
    Point,
    ProductSphere,
    TangentVector,
    WarpedProduct,
    causal_character,
    make_metric,
    sphere_chart_to_embedding,
    sphere_embedding_to_chart,
)

RNG = np.random.default_rng(20260822)

ALL_KINDS = [
    Minkowski(),
    ProductSphere(),
    WarpedProduct(),
    BumpMinkowski(center=(0.2, -0.1, 0.3), radius=1.5, amplitude=0.08),
]


def random_point(spec, rng):
    if isinstance(spec, ProductSphere):
        chart = rng.choice(["north", "south"])
        u = rng.uniform(-1.5, 1.5, size=3)
        return Point((rng.uniform(-3, 3), *u), chart)
    return Point(tuple(rng.uniform(-3, 3, size=4)))


def fd_christoffel(spec, p, h=1e-5):
    """Independent finite-difference oracle for the Levi-Civita symbols."""
    x = p.array()
    dg = np.empty((4, 4, 4))
    for m in range(4):
        xp, xm = x.copy(), x.copy()
        xp[m] += h
        xm[m] -= h
        dg[m] = (
            spec.metric_at(Point(tuple(xp), p.chart_id))
            - spec.metric_at(Point(tuple(xm), p.chart_id))
        ) / (2 * h)
    ginv = np.linalg.inv(spec.metric_at(p))
    gamma = np.empty((4, 4, 4))
    for k in range(4):
        for i in range(4):
            for j in range(4):
                gamma[k, i, j] = 0.5 * sum(
                    ginv[k, m] * (dg[i][m, j] + dg[j][m, i] - dg[m][i, j])
                    for m in range(4)
                )
    return gamma


# ---------------------------------------------------------------- metric_at


def test_minkowski_metric_everywhere():
    spec = Minkowski()
    for _ in range(10):
        p = random_point(spec, RNG)
        assert np.array_equal(spec.metric_at(p), np.diag([-1.0, 1, 1, 1]))


def test_bump_far_point_is_flat():
    spec = BumpMinkowski(center=(0, 0, 0), radius=1.0, amplitude=0.1)
    p = Point((0.0, 2.5, 0.0, 0.0))  # |y| > 2 r_b
    assert np.array_equal(spec.metric_at(p), np.diag([-1.0, 1, 1, 1]))


def test_product_sphere_matches_embedding_metric():
    # pull back the flat R^4 metric through the embedding map numerically
    spec = ProductSphere()
    h = 1e-6
    for _ in range(20):
        p = random_point(spec, RNG)
        u = p.spatial
        J = np.empty((4, 3))
        for i in range(3):
            up, um = u.copy(), u.copy()
            up[i] += h
            um[i] -= h
            J[:, i] = (
                sphere_chart_to_embedding(p.chart_id, up)
                - sphere_chart_to_embedding(p.chart_id, um)
            ) / (2 * h)
        induced = J.T @ J
        got = spec.metric_at(p)[1:, 1:]
        assert np.allclose(got, induced, atol=1e-8)


@pytest.mark.parametrize("spec", ALL_KINDS, ids=lambda s: s.kind)
def test_signature_and_symmetry_sampled(spec):
    # 10^4 sampled points per kind: symmetric, exactly one negative eigenvalue
    rng = np.random.default_rng(17)
    for _ in range(10_000):
        p = random_point(spec, rng)
        g = spec.metric_at(p)
        assert np.allclose(g, g.T)
        w = np.linalg.eigvalsh(g)
        assert (w < 0).sum() == 1 and (w > 0).sum() == 3


# ------------------------------------------------------------ christoffels


@pytest.mark.parametrize("spec", ALL_KINDS, ids=lambda s: s.kind)
def test_christoffel_matches_fd_oracle(spec):
    rng = np.random.default_rng(3)
    for _ in range(25):
        p = random_point(spec, rng)
        got = spec.christoffel_at(p)
        want = fd_christoffel(spec, p)
        scale = max(1.0, np.abs(want).max())
        assert np.abs(got - want).max() / scale < 1e-5
        # symmetry in the lower indices
        assert np.allclose(got, got.transpose(0, 2, 1))


def test_minkowski_christoffel_zero():
    spec = Minkowski()
    assert not spec.christoffel_at(Point((0.3, 1, -2, 0.5))).any()


def test_bump_christoffel_zero_outside_support():
    spec = BumpMinkowski(radius=1.0, amplitude=0.1)
    assert not spec.christoffel_at(Point((0.0, 1.7, 0.2, 0.0))).any()


# ------------------------------------------------------------------ charts


def test_sphere_chart_transition_roundtrip():
    spec = ProductSphere()
    p = Point((1.0, 0.7, -0.2, 0.4), "north")
    q = spec.to_chart(p, "south")
    back = spec.to_chart(q, "north")
    assert np.allclose(back.array(), p.array())
    # same embedded point
    assert np.allclose(spec.embed(p), spec.embed(q), atol=1e-12)


def test_sphere_transition_pushforward_preserves_norm():
    spec = ProductSphere()
    rng = np.random.default_rng(11)
    for _ in range(10):
        u = rng.uniform(0.3, 1.5, size=3) * rng.choice([-1, 1], size=3)
        p = Point((0.0, *u), "north")
        v = np.concatenate(([rng.uniform(-1, 1)], rng.uniform(-1, 1, size=3)))
        q = spec.to_chart(p, "south")
        w = spec.transition_vector(p, v, "south")
        n1 = v @ spec.gplus_at(p) @ v
        n2 = w @ spec.gplus_at(q) @ w
        assert np.isclose(n1, n2, rtol=1e-10)


def test_embedding_chart_inverse():
    for chart in ("north", "south"):
        u = np.array([0.3, -1.1, 0.6])
        X = sphere_chart_to_embedding(chart, u)
        assert np.isclose(X @ X, 1.0)
        v, cid = sphere_embedding_to_chart(X, chart)
        assert np.allclose(v, u)


# ------------------------------------------------------- causal character


def test_causal_character_basics():
    spec = Minkowski()
    p = Point((0, 0, 0, 0))

    def cc(comp):
        return causal_character(spec, TangentVector(p, comp))

    assert cc((1, 1, 0, 0)) == ("null", "future")
    assert cc((-2, 0, 0, 0)) == ("timelike", "past")
    assert cc((0, 1, 0, 0)) == ("spacelike", "none")
    assert cc((0, 0, 0, 0)) == ("zero", "none")


@given(
    comp=st.tuples(*[st.floats(-5, 5, allow_nan=False) for _ in range(4)]),
)
@settings(max_examples=200, deadline=None)
def test_causal_character_negation_flips_orientation(comp):
    spec = Minkowski()
    p = Point((0, 0, 0, 0))
    c1, o1 = causal_character(spec, TangentVector(p, comp))
    c2, o2 = causal_character(spec, TangentVector(p, tuple(-x for x in comp)))
    assert c1 == c2
    flip = {"future": "past", "past": "future", "none": "none"}
    assert o2 == flip[o1]


def test_bump_keeps_dt_timelike_everywhere():
    spec = BumpMinkowski(radius=1.0, amplitude=0.1)
    rng = np.random.default_rng(5)
    for _ in range(200):
        p = Point(tuple(rng.uniform(-2, 2, size=4)))
        cls, orient = causal_character(spec, TangentVector(p, (1, 0, 0, 0)))
        assert (cls, orient) == ("timelike", "future")


def test_make_metric_factory():
    assert make_metric("Minkowski").kind == "Minkowski"
    with pytest.raises(ValueError):
        make_metric("Schwarzschild")
    with pytest.raises(ValueError):
        make_metric("BumpMinkowski", amplitude=0.5)
