"""Spacetime points, tangent vectors, and the metric catalog.

All metrics are product spacetimes R x N with signature (-,+,+,+) in the
global chart x = (t, x1, x2, x3):

    g = -beta(t, y) dt^2 + kappa(t, y)

The auxiliary Riemannian reference metric g+ is the same expression with the
time-time block sign flipped (the paper leaves the choice of a smooth
complete Riemannian metric open; this is ours and is what every distance
and tolerance below refers to).

Spatial charts: Minkowski-like kinds use a single chart of R^3.  The
ProductSphere kind (R x S^3, unit radius) carries two stereographic charts
("north", "south") so no computation ever sits on a coordinate singularity;
the transition map is the inversion u -> u / |u|^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

DEFAULT_CHART = "default"

# Relative tolerance deciding "null" in causal classification; consistent
# with the geodesic integrator tolerance 1e-10.
TOL_NULL = 1e-9


@dataclass(frozen=True)
class Point:
    """A spacetime point: 4 coordinates (t, x1, x2, x3) in a named chart."""

    coords: tuple
    chart_id: str = DEFAULT_CHART

    def __post_init__(self):
        c = tuple(float(v) for v in self.coords)
        if len(c) != 4 or not all(np.isfinite(c)):
            raise ValueError("Point needs 4 finite coordinates, got %r" % (self.coords,))
        object.__setattr__(self, "coords", c)

    @property
    def t(self) -> float:
        return self.coords[0]

    @property
    def spatial(self) -> np.ndarray:
        return np.asarray(self.coords[1:], dtype=float)

    def array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class TangentVector:
    """Tangent vector attached to a base point; components in the base chart."""

    base: Point
    comp: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in self.comp)
        if len(c) != 4 or not all(np.isfinite(c)):
            raise ValueError("TangentVector needs 4 finite components")
        object.__setattr__(self, "comp", c)

    def array(self) -> np.ndarray:
        return np.asarray(self.comp, dtype=float)


def _sym_check(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.T)


class Metric:
    """Base class: a product-structure metric with chart handling.

    Subclasses implement `metric_at` (and may override `christoffel_at`
    with closed forms; the default central finite difference is always
    available and is the oracle the closed forms are tested against).
    """

    kind = "abstract"
    charts = (DEFAULT_CHART,)
    #: step for finite-difference Christoffels
    h_gamma = 1e-5
    #: True when the metric has no t-dependence and beta == 1 (ultrastatic);
    #: enables exact product-split computations downstream.
    ultrastatic = False

    # -- chart plumbing -------------------------------------------------

    def valid_chart(self, chart_id: str) -> bool:
        return chart_id in self.charts

    def chart_center_ok(self, p: Point, margin: float = 0.0) -> bool:
        """Whether p sits inside its chart's comfortable domain."""
        return self.valid_chart(p.chart_id)

    def to_chart(self, p: Point, chart_id: str) -> Point:
        """Express p in another chart of the atlas (identity by default)."""
        if p.chart_id == chart_id:
            return p
        raise ValueError("metric %s has a single chart" % self.kind)

    # -- metric data ----------------------------------------------------

    def metric_at(self, p: Point) -> np.ndarray:
        raise NotImplementedError

    def metric_inverse_at(self, p: Point) -> np.ndarray:
        return np.linalg.inv(self.metric_at(p))

    def gplus_at(self, p: Point) -> np.ndarray:
        """Riemannian reference metric: time-time block sign flipped."""
        g = self.metric_at(p).copy()
        g[0, 0] = -g[0, 0]
        # cross terms vanish for every catalog kind (product structure);
        # keep them symmetric if a subclass ever adds them
        return _sym_check(g)

    def christoffel_at(self, p: Point) -> np.ndarray:
        """Levi-Civita symbols Gamma[k, i, j] = Gamma^k_{ij}.

        Default: central finite differences of metric_at with step h_gamma.
        """
        h = self.h_gamma
        x = p.array()
        dg = np.empty((4, 4, 4))  # dg[m, i, j] = d_m g_ij
        for m in range(4):
            xp = x.copy()
            xm = x.copy()
            xp[m] += h
            xm[m] -= h
            gp = self.metric_at(Point(tuple(xp), p.chart_id))
            gm = self.metric_at(Point(tuple(xm), p.chart_id))
            dg[m] = (gp - gm) / (2.0 * h)
        ginv = self.metric_inverse_at(p)
        # Gamma^k_ij = 1/2 g^{km} (d_i g_mj + d_j g_mi - d_m g_ij)
        term1 = np.swapaxes(dg, 0, 1)      # [m,i,j] = d_i g_mj
        term2 = dg.transpose(1, 2, 0)      # [m,i,j] = d_j g_mi
        gamma = 0.5 * np.einsum("km,mij->kij", ginv, term1 + term2 - dg)
        # symmetrize against FD noise
        return 0.5 * (gamma + gamma.transpose(0, 2, 1))

    def christoffel_grad_at(self, p: Point) -> np.ndarray:
        """dGamma[m, k, i, j] = d_m Gamma^k_ij, central differences by default.

        Only consumed by the Jacobi-field integrator, so the FD fallback is
        fine wherever no closed form is provided.
        """
        h = self.h_gamma
        x = p.array()
        out = np.empty((4, 4, 4, 4))
        for m in range(4):
            xp = x.copy()
            xm = x.copy()
            xp[m] += h
            xm[m] -= h
            gp = self.christoffel_at(Point(tuple(xp), p.chart_id))
            gm = self.christoffel_at(Point(tuple(xm), p.chart_id))
            out[m] = (gp - gm) / (2.0 * h)
        return out

    def acceleration(self, chart_id: str, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Geodesic acceleration dv/ds = -Gamma^k_ij v^i v^j.

        Accepts single states (shape (4,)) or batches (..., 4); subclasses
        override with closed forms, this fallback contracts christoffel_at.
        """
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        if x.ndim == 1:
            gamma = self.christoffel_at(Point(tuple(x), chart_id))
            return -np.einsum("kij,i,j->k", gamma, v, v)
        flat_x = x.reshape(-1, 4)
        flat_v = v.reshape(-1, 4)
        out = np.stack([self.acceleration(chart_id, a, b) for a, b in zip(flat_x, flat_v)])
        return out.reshape(x.shape)

    # -- scalar products --------------------------------------------------

    def dot(self, p: Point, v: np.ndarray, w: np.ndarray) -> float:
        g = self.metric_at(p)
        return float(v @ g @ w)

    def gplus_dot(self, p: Point, v: np.ndarray, w: np.ndarray) -> float:
        return float(v @ self.gplus_at(p) @ w)

    def gplus_norm(self, p: Point, v: np.ndarray) -> float:
        return float(np.sqrt(max(self.gplus_dot(p, v, v), 0.0)))

    def normalize_gplus(self, p: Point, v: np.ndarray) -> np.ndarray:
        n = self.gplus_norm(p, v)
        if n == 0.0:
            raise ValueError("cannot normalize a zero vector")
        return np.asarray(v, dtype=float) / n


class Minkowski(Metric):
    kind = "Minkowski"
    ultrastatic = True
    _eta = np.diag([-1.0, 1.0, 1.0, 1.0])

    def metric_at(self, p: Point) -> np.ndarray:
        if p.chart_id != DEFAULT_CHART:
            raise ValueError("unknown chart %r" % p.chart_id)
        return self._eta.copy()

    def metric_inverse_at(self, p: Point) -> np.ndarray:
        return self._eta.copy()

    def christoffel_at(self, p: Point) -> np.ndarray:
        return np.zeros((4, 4, 4))

    def christoffel_grad_at(self, p: Point) -> np.ndarray:
        return np.zeros((4, 4, 4, 4))

    def acceleration(self, chart_id: str, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.zeros_like(np.asarray(v, dtype=float))


def _bump_profile(s: float) -> float:
    """C-infinity bump on [0,1): value 1 at s=0, identically 0 for s >= 1."""
    if s >= 1.0:
        return 0.0
    return float(np.exp(1.0 - 1.0 / (1.0 - s * s)))


def _bump_profile_deriv(s: float) -> float:
    if s >= 1.0 or s == 0.0:
        return 0.0
    q = 1.0 - s * s
    return float(np.exp(1.0 - 1.0 / q) * (-2.0 * s / (q * q)))


class BumpMinkowski(Metric):
    """Minkowski with a compactly supported radial bump on the spatial metric:

        kappa = (1 + A_b * chi(|y - center| / r_b)) * delta

    chi is the standard C-infinity bump (1 at the center, 0 outside radius
    r_b).  |A_b| <= 0.1 keeps the signature and global hyperbolicity: the
    spatial part is dominated by 1.2 x identity.
    """

    kind = "BumpMinkowski"
    ultrastatic = True

    def __init__(self, center=(0.0, 0.0, 0.0), radius: float = 1.0, amplitude: float = 0.05):
        if abs(amplitude) > 0.1:
            raise ValueError("bump amplitude capped at 0.1, got %g" % amplitude)
        if radius <= 0:
            raise ValueError("bump radius must be positive")
        self.center = np.asarray(center, dtype=float)
        self.radius = float(radius)
        self.amplitude = float(amplitude)

    def conformal_factor(self, y: np.ndarray) -> float:
        """1 + A_b * chi(|y-center|/r_b), the spatial conformal factor."""
        r = float(np.linalg.norm(np.asarray(y, dtype=float) - self.center))
        return 1.0 + self.amplitude * _bump_profile(r / self.radius)

    def metric_at(self, p: Point) -> np.ndarray:
        if p.chart_id != DEFAULT_CHART:
            raise ValueError("unknown chart %r" % p.chart_id)
        c = self.conformal_factor(p.spatial)
        return np.diag([-1.0, c, c, c])

    def christoffel_at(self, p: Point) -> np.ndarray:
        # spatial conformally flat block: kappa_ij = c(y) delta_ij,
        # Gamma^k_ij = (d_i c delta_jk + d_j c delta_ik - d_k c delta_ij)/(2c)
        y = p.spatial - self.center
        r = float(np.linalg.norm(y))
        gamma = np.zeros((4, 4, 4))
        if r == 0.0 or r >= self.radius:
            return gamma
        s = r / self.radius
        dc_dr = self.amplitude * _bump_profile_deriv(s) / self.radius
        grad_c = dc_dr * y / r  # spatial gradient of c
        c = 1.0 + self.amplitude * _bump_profile(s)
        for k in range(3):
            for i in range(3):
                for j in range(3):
                    val = 0.0
                    if j == k:
                        val += grad_c[i]
                    if i == k:
                        val += grad_c[j]
                    if i == j:
                        val -= grad_c[k]
                    gamma[k + 1, i + 1, j + 1] = val / (2.0 * c)
        return gamma

    def acceleration(self, chart_id: str, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        y = x[..., 1:4] - self.center
        r = np.linalg.norm(y, axis=-1)
        s = r / self.radius
        inside = (s < 1.0) & (r > 1e-300)
        out = np.zeros_like(v)
        if not np.any(inside):
            return out
        s = np.where(inside, s, 0.5)  # dummy values off-support, masked below
        q = 1.0 - s * s
        chi = np.exp(1.0 - 1.0 / q)
        dchi = chi * (-2.0 * s / (q * q))
        c = 1.0 + self.amplitude * np.where(inside, chi, 0.0)
        dc_dr = self.amplitude * np.where(inside, dchi, 0.0) / self.radius
        rsafe = np.where(r > 1e-300, r, 1.0)
        grad = (dc_dr / rsafe)[..., None] * y
        vs = v[..., 1:4]
        vg = np.sum(vs * grad, axis=-1)
        v2 = np.sum(vs * vs, axis=-1)
        out[..., 1:4] = -(2.0 * vs * vg[..., None] - v2[..., None] * grad) / (2.0 * c[..., None])
        return out


def sphere_chart_to_embedding(chart_id: str, u: np.ndarray) -> np.ndarray:
    """Map stereographic coordinates to the unit sphere S^3 in R^4."""
    u = np.asarray(u, dtype=float)
    nn = float(u @ u)
    x = 2.0 * u / (1.0 + nn)
    last = (nn - 1.0) / (1.0 + nn)
    if chart_id == "south":
        last = -last
    return np.append(x, last)


def sphere_embedding_tangent(chart_id: str, u: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Differential of sphere_chart_to_embedding applied to a chart vector w.

    Isometric for the round metric, so |result| = |w|_kappa.
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    nn = float(u @ u)
    uw = float(u @ w)
    first = 2.0 * w / (1.0 + nn) - 4.0 * uw * u / (1.0 + nn) ** 2
    last = 4.0 * uw / (1.0 + nn) ** 2
    if chart_id == "south":
        last = -last
    return np.append(first, last)


def sphere_embedding_to_chart(X: np.ndarray, chart_id: Optional[str] = None):
    """Inverse of sphere_chart_to_embedding; picks the better chart if not given."""
    X = np.asarray(X, dtype=float)
    X = X / np.linalg.norm(X)
    if chart_id is None:
        chart_id = "north" if X[3] <= 0.0 else "south"
    w = X[3] if chart_id == "north" else -X[3]
    # u = x / (1 - w), projection from the pole w = +1
    denom = 1.0 - w
    if denom < 1e-12:
        raise ValueError("embedding point at the %s chart pole" % chart_id)
    return X[:3] / denom, chart_id


class ProductSphere(Metric):
    """R x S^3 with the unit round sphere: g = -dt^2 + (round metric).

    Stereographic charts: kappa_ij = 4 delta_ij / (1 + |u|^2)^2.
    """

    kind = "ProductSphere"
    charts = ("north", "south")
    ultrastatic = True
    #: switch charts during integration when |u| exceeds this
    chart_switch_radius = 2.0

    def valid_chart(self, chart_id: str) -> bool:
        return chart_id in self.charts

    def chart_center_ok(self, p: Point, margin: float = 0.0) -> bool:
        return float(np.linalg.norm(p.spatial)) < self.chart_switch_radius + margin

    def to_chart(self, p: Point, chart_id: str) -> Point:
        if p.chart_id == chart_id:
            return p
        u = p.spatial
        nn = float(u @ u)
        if nn < 1e-24:
            raise ValueError("chart transition undefined at the origin")
        v = u / nn
        return Point((p.t, v[0], v[1], v[2]), chart_id)

    def transition_vector(self, p: Point, v: np.ndarray, chart_id: str) -> np.ndarray:
        """Push a tangent vector through the chart transition at p."""
        if p.chart_id == chart_id:
            return np.asarray(v, dtype=float)
        u = p.spatial
        nn = float(u @ u)
        vs = np.asarray(v[1:], dtype=float)
        # d(u/|u|^2) = v/|u|^2 - 2 (u.v) u / |u|^4
        out = vs / nn - 2.0 * float(u @ vs) * u / (nn * nn)
        return np.concatenate(([v[0]], out))

    def metric_at(self, p: Point) -> np.ndarray:
        if p.chart_id not in self.charts:
            raise ValueError("unknown chart %r" % p.chart_id)
        nn = float(p.spatial @ p.spatial)
        f = 4.0 / (1.0 + nn) ** 2
        return np.diag([-1.0, f, f, f])

    def christoffel_at(self, p: Point) -> np.ndarray:
        # conformally flat spatial block exp(2 phi) delta with
        # phi = log(2 / (1+|u|^2)); Gamma^k_ij = d_i phi delta_jk
        # + d_j phi delta_ik - d_k phi delta_ij
        u = p.spatial
        nn = float(u @ u)
        dphi = -2.0 * u / (1.0 + nn)
        I3 = np.eye(3)
        gamma = np.zeros((4, 4, 4))
        gamma[1:, 1:, 1:] = (np.einsum("jk,i->kij", I3, dphi)
                             + np.einsum("ik,j->kij", I3, dphi)
                             - np.einsum("ij,k->kij", I3, dphi))
        return gamma

    def christoffel_grad_at(self, p: Point) -> np.ndarray:
        # d_m dphi_i = -2 delta_im / (1+nn) + 4 u_i u_m / (1+nn)^2
        u = p.spatial
        nn = float(u @ u)
        H = -2.0 * np.eye(3) / (1.0 + nn) + 4.0 * np.outer(u, u) / (1.0 + nn) ** 2
        I3 = np.eye(3)
        out = np.zeros((4, 4, 4, 4))
        out[1:, 1:, 1:, 1:] = (np.einsum("jk,im->mkij", I3, H)
                               + np.einsum("ik,jm->mkij", I3, H)
                               - np.einsum("ij,km->mkij", I3, H))
        return out

    def acceleration(self, chart_id: str, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        u = x[..., 1:4]
        nn = np.sum(u * u, axis=-1)
        dphi = -2.0 * u / (1.0 + nn)[..., None]
        vs = v[..., 1:4]
        vd = np.sum(vs * dphi, axis=-1)
        v2 = np.sum(vs * vs, axis=-1)
        out = np.zeros_like(v)
        out[..., 1:4] = -(2.0 * vs * vd[..., None] - v2[..., None] * dphi)
        return out

    # geometry helpers used by tests and fast paths
    def embed(self, p: Point) -> np.ndarray:
        return sphere_chart_to_embedding(p.chart_id, p.spatial)

    def sphere_distance(self, p: Point, q: Point) -> float:
        a = self.embed(p)
        b = self.embed(q)
        # half-angle form: stable at both the near and antipodal ends, where
        # arccos of the dot product loses half the digits
        return float(2.0 * np.arctan2(np.linalg.norm(a - b), np.linalg.norm(a + b)))

    def antipode(self, p: Point) -> Point:
        X = -self.embed(p)
        u, cid = sphere_embedding_to_chart(X)
        return Point((p.t, u[0], u[1], u[2]), cid)


class WarpedProduct(Metric):
    """Time-dependent warped product, the only non-static catalog member:

        g = -beta(t,y) dt^2 + a(t,y)^2 delta

    with beta = 1 + beta_amp * B(y) * (1 + 0.3 sin t),
         a^2  = 1 + kappa_amp * sin(omega t) * B(y),
    where B is a Gaussian envelope exp(-|y|^2 / w^2).  Amplitude bounds keep
    the signature Lorentzian everywhere.
    """

    kind = "WarpedProduct"
    ultrastatic = False

    def __init__(self, beta_amp: float = 0.2, kappa_amp: float = 0.2,
                 omega: float = 1.0, width: float = 2.0):
        if not (0 <= beta_amp <= 0.5 and 0 <= kappa_amp <= 0.3):
            raise ValueError("amplitude bounds: beta_amp in [0,0.5], kappa_amp in [0,0.3]")
        self.beta_amp = float(beta_amp)
        self.kappa_amp = float(kappa_amp)
        self.omega = float(omega)
        self.width = float(width)

    def _envelope(self, y: np.ndarray) -> float:
        return float(np.exp(-float(y @ y) / self.width**2))

    def metric_at(self, p: Point) -> np.ndarray:
        if p.chart_id != DEFAULT_CHART:
            raise ValueError("unknown chart %r" % p.chart_id)
        env = self._envelope(p.spatial)
        beta = 1.0 + self.beta_amp * env * (1.0 + 0.3 * np.sin(p.t))
        a2 = 1.0 + self.kappa_amp * np.sin(self.omega * p.t) * env
        return np.diag([-beta, a2, a2, a2])

    def christoffel_at(self, p: Point) -> np.ndarray:
        # closed forms for the diagonal metric diag(-beta, a2, a2, a2)
        t = p.t
        y = p.spatial
        env = self._envelope(y)
        denv = env * (-2.0 * y / self.width**2)
        beta = 1.0 + self.beta_amp * env * (1.0 + 0.3 * np.sin(t))
        dbeta_t = self.beta_amp * env * 0.3 * np.cos(t)
        dbeta_y = self.beta_amp * (1.0 + 0.3 * np.sin(t)) * denv
        a2 = 1.0 + self.kappa_amp * np.sin(self.omega * t) * env
        da2_t = self.kappa_amp * self.omega * np.cos(self.omega * t) * env
        da2_y = self.kappa_amp * np.sin(self.omega * t) * denv

        gamma = np.zeros((4, 4, 4))
        gamma[0, 0, 0] = dbeta_t / (2 * beta)
        for i in range(3):
            gamma[0, 0, i + 1] = gamma[0, i + 1, 0] = dbeta_y[i] / (2 * beta)
            gamma[i + 1, 0, 0] = dbeta_y[i] / (2 * a2)
            gamma[i + 1, 0, i + 1] = gamma[i + 1, i + 1, 0] = da2_t / (2 * a2)
            gamma[0, i + 1, i + 1] = da2_t / (2 * beta)
        for k in range(3):
            for i in range(3):
                for j in range(3):
                    val = 0.0
                    if j == k:
                        val += da2_y[i]
                    if i == k:
                        val += da2_y[j]
                    if i == j:
                        val -= da2_y[k]
                    gamma[k + 1, i + 1, j + 1] = val / (2 * a2)
        return gamma

    def acceleration(self, chart_id: str, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        v = np.asarray(v, dtype=float)
        t = np.asarray(x[..., 0])
        y = x[..., 1:4]
        env = np.exp(-np.sum(y * y, axis=-1) / self.width**2)
        denv = env[..., None] * (-2.0 * y / self.width**2)
        beta = 1.0 + self.beta_amp * env * (1.0 + 0.3 * np.sin(t))
        dbeta_t = self.beta_amp * env * 0.3 * np.cos(t)
        dbeta_y = self.beta_amp * np.asarray(1.0 + 0.3 * np.sin(t))[..., None] * denv
        a2 = 1.0 + self.kappa_amp * np.sin(self.omega * t) * env
        da2_t = self.kappa_amp * self.omega * np.cos(self.omega * t) * env
        da2_y = self.kappa_amp * np.asarray(np.sin(self.omega * t))[..., None] * denv

        v0 = np.asarray(v[..., 0])
        vs = v[..., 1:4]
        v2 = np.sum(vs * vs, axis=-1)
        vb = np.sum(vs * dbeta_y, axis=-1)
        va = np.sum(vs * da2_y, axis=-1)
        out = np.empty_like(v)
        out[..., 0] = -(dbeta_t / (2 * beta) * v0 * v0 + vb / beta * v0
                        + da2_t / (2 * beta) * v2)
        out[..., 1:4] = -(dbeta_y * np.asarray((v0 * v0) / (2 * a2))[..., None]
                          + np.asarray(da2_t / a2 * v0)[..., None] * vs
                          + (2.0 * vs * np.asarray(va)[..., None]
                             - np.asarray(v2)[..., None] * da2_y) / np.asarray(2 * a2)[..., None])
        return out


_KINDS = {
    "Minkowski": Minkowski,
    "ProductSphere": ProductSphere,
    "WarpedProduct": WarpedProduct,
    "BumpMinkowski": BumpMinkowski,
}


def make_metric(kind: str, **params) -> Metric:
    """Factory over the metric catalog."""
    try:
        cls = _KINDS[kind]
    except KeyError:
        raise ValueError("unknown metric kind %r (have %s)" % (kind, sorted(_KINDS)))
    return cls(**params)


def causal_character(spec: Metric, v: TangentVector, tol_null: float = TOL_NULL):
    """Classify a tangent vector.

    Returns (causal_class, orientation) with causal_class in
    {"timelike", "null", "spacelike", "zero"} and orientation in
    {"future", "past", "none"}.  Null means |g(v,v)| < tol_null * g+(v,v);
    future means g(v, d_t) < 0.
    """
    comp = v.array()
    if not comp.any():
        return ("zero", "none")
    p = v.base
    g = spec.metric_at(p)
    gp = spec.gplus_at(p)
    q = float(comp @ g @ comp)
    scale = float(comp @ gp @ comp)
    if abs(q) < tol_null * scale:
        cls = "null"
    elif q < 0:
        cls = "timelike"
    else:
        cls = "spacelike"
    if cls == "spacelike":
        return (cls, "none")
    # g(v, d_t) = g_{0mu} v^mu; negative for future-pointing causal vectors
    tdot = float(g[0] @ comp)
    if tdot < 0:
        orient = "future"
    elif tdot > 0:
        orient = "past"
    else:
        orient = "none"
    return (cls, orient)
