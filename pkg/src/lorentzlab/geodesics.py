"""Geodesic flow: integration, Jacobi fields, cut locus, time separation.

The exponential map and everything downstream of it lives here.  Geodesics
are integrated as first-order systems z = (x, v) with an adaptive
Runge-Kutta scheme (DOP853, abs/rel tolerance 1e-10); conjugate points come
from the variational (Jacobi) equations integrated alongside; the cut locus
function rho(x, xi) is primarily a bisection on the monotone predicate
"tau(x, gamma(s)) > tol" with the conjugate/second-geodesic route kept as a
cross-check.

Parameter conventions: all parameters are affine with gamma'(0) = xi exactly
as given, so rescaling xi rescales every reported parameter inversely.  Null
directions handed to cut_time in tests use unit spatial speed, which makes
the antipodal cut on the unit 3-sphere sit at parameter pi.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq, minimize_scalar

from .metrics import (
    DEFAULT_CHART,
    Metric,
    Point,
    ProductSphere,
    TangentVector,
    sphere_chart_to_embedding,
    sphere_embedding_tangent,
)

__all__ = [
    "BISECT_DEPTH",
    "CLUSTER_TOL",
    "CutRecord",
    "GeodesicError",
    "GeodesicPath",
    "Region",
    "TOL_HIT",
    "TOL_TAU",
    "chronological_relation",
    "cut_time",
    "default_region",
    "exp_map",
    "first_conjugate_time",
    "integrate_geodesic",
    "null_connect",
    "spatial_distance",
    "time_separation",
]

#: threshold on tau defining the strict chronological relation
TOL_TAU = 1e-7
#: bisection depth for every monotone-predicate search
BISECT_DEPTH = 60
#: conjugate point location tolerance
TOL_CONJ = 1e-6
#: spatial miss tolerance accepting a null-connection solution
TOL_HIT = 1e-8
#: g+ distance under which two null directions count as the same solution
CLUSTER_TOL = 1e-3

_RTOL = 1e-10
_ATOL = 1e-10


class GeodesicError(RuntimeError):
    """A geodesic computation could not certify its result."""


@dataclass(frozen=True)
class Region:
    """Computational box: a t-interval times a spatial ball.

    spatial_radius may be +inf (always for the compact sphere factor, where
    a coordinate ball would be chart-dependent and meaningless).
    """

    t_min: float = -20.0
    t_max: float = 20.0
    spatial_radius: float = 20.0
    center: tuple = (0.0, 0.0, 0.0)

    def contains(self, p: Point) -> bool:
        if not (self.t_min < p.t < self.t_max):
            return False
        if not np.isfinite(self.spatial_radius):
            return True
        d = np.linalg.norm(p.spatial - np.asarray(self.center, dtype=float))
        return bool(d < self.spatial_radius)


def default_region(spec: Metric) -> Region:
    if spec.kind == "ProductSphere":
        return Region(spatial_radius=np.inf)
    return Region()


# ---------------------------------------------------------------------------
# integration machinery


@dataclass
class _Segment:
    sol: object          # scipy OdeSolution over [s0, s1]
    chart_id: str
    s0: float
    s1: float
    det_factor: float    # restores continuity of the Jacobi determinant


def _plain_rhs(spec: Metric, chart_id: str) -> Callable:
    def rhs(s, z):
        out = np.empty(8)
        out[:4] = z[4:8]
        out[4:] = spec.acceleration(chart_id, z[:4], z[4:8])
        return out

    return rhs


def _jacobi_rhs(spec: Metric, chart_id: str) -> Callable:
    """RHS for (x, v, J, K): geodesic plus 4 Jacobi fields (columns of J)."""

    def rhs(s, z):
        p = Point(tuple(z[:4]), chart_id)
        v = z[4:8]
        gamma = spec.christoffel_at(p)
        dgamma = spec.christoffel_grad_at(p)
        J = z[8:24].reshape(4, 4)
        K = z[24:40].reshape(4, 4)
        out = np.empty(40)
        out[:4] = v
        out[4:8] = -np.einsum("kij,i,j->k", gamma, v, v)
        out[8:24] = K.ravel()
        Kdot = -np.einsum("mkab,mi,a,b->ki", dgamma, J, v, v) \
            - 2.0 * np.einsum("kab,a,bi->ki", gamma, v, K)
        out[24:40] = Kdot.ravel()
        return out

    return rhs


def _batch_rhs(spec: Metric, chart_id: str, n: int) -> Callable:
    def rhs(s, z):
        Z = z.reshape(n, 8)
        out = np.empty_like(Z)
        out[:, :4] = Z[:, 4:8]
        out[:, 4:] = spec.acceleration(chart_id, Z[:, :4], Z[:, 4:8])
        return out.ravel()

    return rhs


def _make_events(spec: Metric, region: Optional[Region], chart_id: str,
                 t_stop: Optional[float] = None) -> Tuple[list, dict]:
    """Terminal events for one integration segment, tagged by meaning."""
    events = []
    tags = {}

    if region is not None:
        a, b = region.t_min, region.t_max

        def e_t(s, z, a=a, b=b):
            return (z[0] - a) * (b - z[0])

        e_t.terminal = True
        e_t.direction = -1
        events.append(e_t)
        tags[len(events) - 1] = "region"

        if np.isfinite(region.spatial_radius) and not isinstance(spec, ProductSphere):
            c = np.asarray(region.center, dtype=float)
            R2 = float(region.spatial_radius) ** 2

            def e_r(s, z, c=c, R2=R2):
                d = z[1:4] - c
                return R2 - float(d @ d)

            e_r.terminal = True
            e_r.direction = -1
            events.append(e_r)
            tags[len(events) - 1] = "region"

    if isinstance(spec, ProductSphere):
        Rs2 = spec.chart_switch_radius ** 2

        def e_sw(s, z, Rs2=Rs2):
            return Rs2 - float(z[1:4] @ z[1:4])

        e_sw.terminal = True
        e_sw.direction = -1
        events.append(e_sw)
        tags[len(events) - 1] = "chart"

        # belt-and-braces pole guard for trajectories that entered a chart
        # far outside the comfortable zone
        def e_pole(s, z):
            return 2500.0 - float(z[1:4] @ z[1:4])

        e_pole.terminal = True
        e_pole.direction = -1
        events.append(e_pole)
        tags[len(events) - 1] = "chart"

    if t_stop is not None:

        def e_ts(s, z, t_stop=t_stop):
            return z[0] - t_stop

        e_ts.terminal = True
        e_ts.direction = 1
        events.append(e_ts)
        tags[len(events) - 1] = "time"

    return events, tags


def _inversion_differential(u: np.ndarray) -> np.ndarray:
    nn = float(u @ u)
    return np.eye(3) / nn - 2.0 * np.outer(u, u) / nn**2


def _inversion_hessian_apply(u: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Directional second derivative of u -> u/|u|^2: d_a (DPhi(u) b)."""
    nn = float(u @ u)
    ua = float(u @ a)
    ub = float(u @ b)
    ab = float(a @ b)
    return (-2.0 * ua / nn**2) * b - (2.0 / nn**2) * (ab * u + ub * a) \
        + (8.0 * ua * ub / nn**3) * u


def _switch_chart_state(spec: ProductSphere, chart_id: str, z: np.ndarray):
    """Carry the integration state (and Jacobi data) across an inversion."""
    other = "south" if chart_id == "north" else "north"
    u = z[1:4]
    nn = float(u @ u)
    D = _inversion_differential(u)
    x_new = np.concatenate(([z[0]], u / nn))
    v_sp = z[5:8]
    v_new = np.concatenate(([z[4]], D @ v_sp))
    if z.size == 8:
        return other, np.concatenate([x_new, v_new]), float(np.linalg.det(D))
    J = z[8:24].reshape(4, 4)
    K = z[24:40].reshape(4, 4)
    J_new = J.copy()
    K_new = K.copy()
    J_new[1:4, :] = D @ J[1:4, :]
    for i in range(4):
        K_new[1:4, i] = D @ K[1:4, i] + _inversion_hessian_apply(u, v_sp, J[1:4, i])
    z_new = np.concatenate([x_new, v_new, J_new.ravel(), K_new.ravel()])
    return other, z_new, float(np.linalg.det(D))


def _integrate_segments(spec: Metric, x: Point, xi: np.ndarray, max_param: float,
                        region: Optional[Region], with_jacobi: bool,
                        t_stop: Optional[float] = None):
    """Shared driver: integrate across chart switches until stop/exit/end."""
    if isinstance(spec, ProductSphere) \
            and float(x.spatial @ x.spatial) > spec.chart_switch_radius**2:
        other = "south" if x.chart_id == "north" else "north"
        xi = spec.transition_vector(x, np.asarray(xi, dtype=float), other)
        x = spec.to_chart(x, other)
    chart = x.chart_id
    z = np.concatenate([x.array(), np.asarray(xi, dtype=float)])
    if with_jacobi:
        z = np.concatenate([z, np.zeros(16), np.eye(4).ravel()])
    s0 = 0.0
    segments: List[_Segment] = []
    termination = "reached_max_param"
    det_factor = 1.0
    for _ in range(64):
        rhs = _jacobi_rhs(spec, chart) if with_jacobi else _plain_rhs(spec, chart)
        events, tags = _make_events(spec, region, chart, t_stop)
        sol = solve_ivp(rhs, (s0, max_param), z, method="DOP853",
                        dense_output=True, events=events, rtol=_RTOL, atol=_ATOL)
        if sol.status == -1:
            termination = "solver_failure"
            end = float(sol.t[-1])
            if end > s0:
                segments.append(_Segment(sol.sol, chart, s0, end, det_factor))
            return segments, termination, end
        if sol.status == 0:
            segments.append(_Segment(sol.sol, chart, s0, max_param, det_factor))
            return segments, termination, max_param
        fired = [(te[0], i) for i, te in enumerate(sol.t_events) if te.size]
        s_ev, idx = min(fired)
        segments.append(_Segment(sol.sol, chart, s0, float(s_ev), det_factor))
        tag = tags[idx]
        if tag == "region":
            return segments, "exited_region", float(s_ev)
        if tag == "time":
            return segments, "reached_time", float(s_ev)
        # chart switch
        z = sol.sol(s_ev)
        chart, z, detD = _switch_chart_state(spec, chart, z)
        det_factor /= detD
        s0 = float(s_ev)
    return segments, "solver_failure", s0


@dataclass
class GeodesicPath:
    """An integrated geodesic with dense evaluation across chart segments."""

    spec: Metric
    initial: Tuple[Point, TangentVector]
    samples: List[Tuple[float, Point, TangentVector]]
    termination: str
    end_param: float
    _segments: List[_Segment]
    _has_jacobi: bool = False

    def _segment_for(self, s: float) -> _Segment:
        if not self._segments:
            raise GeodesicError("empty geodesic path")
        s = min(max(s, self._segments[0].s0), self._segments[-1].s1)
        starts = [seg.s0 for seg in self._segments]
        i = max(bisect_right(starts, s) - 1, 0)
        return self._segments[i]

    def _state_array(self, s: float):
        seg = self._segment_for(s)
        z = seg.sol(min(max(s, seg.s0), seg.s1))
        return z, seg

    def state(self, s: float) -> Tuple[Point, TangentVector]:
        z, seg = self._state_array(s)
        p = Point(tuple(z[:4]), seg.chart_id)
        return p, TangentVector(p, tuple(z[4:8]))

    def point(self, s: float) -> Point:
        z, seg = self._state_array(s)
        return Point(tuple(z[:4]), seg.chart_id)

    def velocity(self, s: float) -> np.ndarray:
        z, _ = self._state_array(s)
        return z[4:8]

    def jacobi_det(self, s: float) -> float:
        """det of the 4 Jacobi fields J_i with J(0)=0, J'(0)=e_i.

        Corrected by the chart-transition determinant so the value is
        continuous across switches; zeros locate conjugate points.
        """
        if not self._has_jacobi:
            raise GeodesicError("path was integrated without Jacobi fields")
        z, seg = self._state_array(s)
        return float(np.linalg.det(z[8:24].reshape(4, 4))) * seg.det_factor

    def norm_drift(self) -> float:
        """max |g(v,v)(s) - g(v,v)(0)| over samples, for the drift invariant."""
        vals = []
        for _, p, tv in self.samples:
            vals.append(self.spec.dot(p, tv.array(), tv.array()))
        if not vals:
            return 0.0
        return float(np.max(np.abs(np.asarray(vals) - vals[0])))


def _build_samples(spec, segments, end_param, n=129):
    pts = set(np.linspace(0.0, end_param, n)) if end_param > 0 else {0.0}
    for seg in segments:
        pts.add(seg.s0)
        pts.add(seg.s1)
    out = []
    starts = [seg.s0 for seg in segments]
    for s in sorted(pts):
        i = max(bisect_right(starts, s) - 1, 0)
        seg = segments[i]
        z = seg.sol(min(max(s, seg.s0), seg.s1))
        p = Point(tuple(z[:4]), seg.chart_id)
        out.append((float(s), p, TangentVector(p, tuple(z[4:8]))))
    return out


def _as_components(xi) -> np.ndarray:
    if isinstance(xi, TangentVector):
        return xi.array()
    return np.asarray(xi, dtype=float)


def integrate_geodesic(spec: Metric, x: Point, xi, max_param: float,
                       region: Optional[Region] = None) -> GeodesicPath:
    """Integrate the geodesic from x with initial velocity xi.

    Terminates at max_param, on leaving the region, or on solver failure;
    the parametrization is affine with gamma'(0) = xi.
    """
    comp = _as_components(xi)
    if not comp.any():
        raise ValueError("initial velocity must be nonzero")
    if region is None:
        region = default_region(spec)
    if not region.contains(x):
        raise ValueError("starting point outside the region")
    segments, termination, end = _integrate_segments(
        spec, x, comp, max_param, region, with_jacobi=False)
    if not segments:
        raise GeodesicError("geodesic integration produced no output")
    samples = _build_samples(spec, segments, end)
    return GeodesicPath(spec, (x, TangentVector(x, tuple(comp))),
                        samples, termination, end, segments)


def exp_map(spec: Metric, x: Point, v, s: float = 1.0,
            region: Optional[Region] = None) -> Point:
    """Endpoint of the geodesic from x with velocity v at parameter s."""
    path = integrate_geodesic(spec, x, v, s, region)
    if path.termination == "solver_failure":
        raise GeodesicError("exponential map integration failed")
    return path.point(min(s, path.end_param))


# ---------------------------------------------------------------------------
# conjugate points


def _jacobi_path(spec, x, xi, max_param, region):
    segments, termination, end = _integrate_segments(
        spec, x, _as_components(xi), max_param, region, with_jacobi=True)
    path = GeodesicPath(spec, (x, TangentVector(x, tuple(_as_components(xi)))),
                        [], termination, end, segments, _has_jacobi=True)
    return path


def first_conjugate_time(spec: Metric, x: Point, xi, max_param: float,
                         region: Optional[Region] = None) -> Optional[float]:
    """First parameter where the differential of exp_x degenerates.

    Tracks four Jacobi fields spanning all velocity perturbations and takes
    the determinant; a sign change is bisected, and an even-order zero (the
    generic case under spherical refocusing, where two transverse fields
    vanish together) is caught as an interior minimum of |det| dropping
    below threshold.  Returns None when no conjugate point is reached.
    """
    if region is None:
        region = default_region(spec)
    path = _jacobi_path(spec, x, xi, max_param, region)
    end = path.end_param
    if end <= 1e-9:
        return None

    s_floor = 1e-3 * end

    def dnorm(s):
        return path.jacobi_det(s) / s**4

    n = max(257, min(int(end / 0.01) + 2, 4097))
    grid = np.linspace(s_floor, end, n)
    vals = np.array([dnorm(s) for s in grid])

    run_max = abs(vals[0])
    for i in range(len(grid) - 1):
        run_max = max(run_max, abs(vals[i]))
        if vals[i] == 0.0:
            return float(grid[i])
        if vals[i] * vals[i + 1] < 0.0:
            root = brentq(dnorm, grid[i], grid[i + 1], xtol=1e-7)
            return float(root)
        if 0 < i and abs(vals[i]) < abs(vals[i - 1]) and abs(vals[i]) <= abs(vals[i + 1]):
            res = minimize_scalar(lambda s: abs(dnorm(s)),
                                  bounds=(grid[i - 1], grid[i + 1]),
                                  method="bounded",
                                  options={"xatol": 1e-8})
            if abs(res.fun) < 1e-6 * max(run_max, 1e-300):
                return float(res.x)
    return None


# ---------------------------------------------------------------------------
# spatial distance (ultrastatic kinds) and time separation


def _segment_clears_ball(a: np.ndarray, b: np.ndarray, center: np.ndarray,
                         radius: float) -> bool:
    d = b - a
    dd = float(d @ d)
    if dd == 0.0:
        return float(np.linalg.norm(a - center)) >= radius
    t = np.clip(float((center - a) @ d) / dd, 0.0, 1.0)
    closest = a + t * d
    return float(np.linalg.norm(closest - center)) >= radius


def _bump_spatial_shoot(spec, a: np.ndarray, b: np.ndarray) -> float:
    """Length of the spatial geodesic of kappa = c(y) delta from a to b."""

    def rhs(s, z):
        y = z[:3]
        v = z[3:]
        x4 = np.concatenate(([0.0], y))
        v4 = np.concatenate(([0.0], v))
        return np.concatenate([v, spec.acceleration(DEFAULT_CHART, x4, v4)[1:]])

    def endpoint(v0):
        sol = solve_ivp(rhs, (0.0, 1.0), np.concatenate([a, v0]),
                        method="DOP853", rtol=1e-10, atol=1e-10, t_eval=[1.0])
        if sol.status != 0:
            return None
        return sol.y[:3, -1]

    v = b - a
    scale = max(np.linalg.norm(v), 1e-12)
    for _ in range(25):
        e = endpoint(v)
        if e is None:
            raise GeodesicError("spatial shooting integration failed")
        r = e - b
        if np.linalg.norm(r) < 1e-11 * scale:
            break
        # finite-difference Jacobian of endpoint wrt v
        h = 1e-7 * scale
        J = np.empty((3, 3))
        for k in range(3):
            vp = v.copy()
            vp[k] += h
            ep = endpoint(vp)
            J[:, k] = (ep - e) / h
        try:
            dv = np.linalg.solve(J, -r)
        except np.linalg.LinAlgError:
            raise GeodesicError("singular Jacobian in spatial shooting")
        v = v + dv
    else:
        raise GeodesicError(
            "spatial shooting did not converge: |gap|=%g" % np.linalg.norm(r))
    c0 = spec.conformal_factor(a)
    return math.sqrt(c0) * float(np.linalg.norm(v))


def spatial_distance(spec: Metric, x: Point, y: Point) -> float:
    """Riemannian distance in the spatial factor (ultrastatic kinds only)."""
    if spec.kind == "Minkowski":
        return float(np.linalg.norm(y.spatial - x.spatial))
    if spec.kind == "ProductSphere":
        return spec.sphere_distance(x, y)
    if spec.kind == "BumpMinkowski":
        a = x.spatial
        b = y.spatial
        if spec.amplitude >= 0.0 and _segment_clears_ball(a, b, spec.center, spec.radius):
            # c >= 1 everywhere, so the straight segment outside the support
            # is exactly minimizing
            return float(np.linalg.norm(b - a))
        return _bump_spatial_shoot(spec, a, b)
    raise GeodesicError("no spatial distance for kind %s" % spec.kind)


def _exp_endpoint_batch(spec: Metric, chart: str, x4: np.ndarray,
                        Vs: np.ndarray) -> np.ndarray:
    """Endpoints exp_x(v) at parameter 1 for a batch of velocities."""
    n = Vs.shape[0]
    Z0 = np.concatenate([np.tile(x4, (n, 1)), Vs], axis=1).ravel()
    sol = solve_ivp(_batch_rhs(spec, chart, n), (0.0, 1.0), Z0,
                    method="DOP853", rtol=1e-10, atol=1e-10, t_eval=[1.0])
    if sol.status != 0:
        raise GeodesicError("batched exponential map failed")
    return sol.y[:, -1].reshape(n, 8)[:, :4]


def _shoot_connect(spec: Metric, x: Point, y: Point):
    """Solve exp_x(v) = y by Newton with batched finite differences.

    Returns (v, residual_norm) for the best converged start, else None.
    Single-chart kinds only.
    """
    x4 = x.array()
    target = y.array()
    chord = target - x4
    scale = max(float(np.linalg.norm(chord)), 1e-9)
    starts = [chord, 1.2 * chord, 0.8 * chord]
    for k in range(4):
        tweak = np.zeros(4)
        tweak[k] = 0.15 * scale
        starts.append(chord + tweak)
        starts.append(chord - tweak)

    best = None
    for v0 in starts:
        v = np.asarray(v0, dtype=float)
        ok = False
        for _ in range(20):
            h = 1e-7 * scale
            Vs = np.vstack([v] + [v + h * np.eye(4)[k] for k in range(4)])
            try:
                ends = _exp_endpoint_batch(spec, x.chart_id, x4, Vs)
            except GeodesicError:
                break
            r = ends[0] - target
            if np.linalg.norm(r) < 1e-10 * scale:
                ok = True
                break
            J = (ends[1:] - ends[0]).T / h
            try:
                dv = np.linalg.solve(J, -r)
            except np.linalg.LinAlgError:
                break
            if np.linalg.norm(dv) > 10.0 * scale:
                dv *= 10.0 * scale / np.linalg.norm(dv)
            v = v + dv
        if ok:
            res = float(np.linalg.norm(r))
            if best is None or res < best[1]:
                best = (v, res)
            break  # connecting geodesic is unique at catalog curvature
    return best


def time_separation(spec: Metric, x: Point, y: Point) -> float:
    """Lorentzian time separation tau(x, y); 0 outside the chronological future.

    Ultrastatic kinds use the exact product split sqrt(dt^2 - d^2); the
    time-dependent kind falls back to shooting for the connecting geodesic
    and errors out loudly if the solve fails (a silent 0 would poison every
    downstream bisection).
    """
    if spec.ultrastatic:
        dt = y.t - x.t
        if dt <= 0.0:
            return 0.0
        d = spatial_distance(spec, x, y)
        if dt <= d:
            return 0.0
        return math.sqrt(dt * dt - d * d)

    dt = y.t - x.t
    if dt <= 0.0:
        return 0.0
    got = _shoot_connect(spec, x, y)
    if got is None:
        raise GeodesicError(
            "time_separation shooting failed for %r -> %r" % (x.coords, y.coords))
    v, _ = got
    if v[0] <= 0.0:
        return 0.0
    q = spec.dot(x, v, v)
    if q >= -1e-14:
        return 0.0
    return math.sqrt(-q)


# ---------------------------------------------------------------------------
# null connection shooting


def _null_vector_from_spatial(spec: Metric, x: Point, e: np.ndarray) -> np.ndarray:
    """Future null vector at x with spatial direction e, normalized g+ unit."""
    g = spec.metric_at(x)
    kap = float(e @ g[1:, 1:] @ e)
    if kap <= 0.0:
        raise ValueError("spatial direction must be nonzero")
    w = e / math.sqrt(2.0 * kap)
    beta = -g[0, 0]
    v0 = math.sqrt(1.0 / (2.0 * beta))
    return np.concatenate(([v0], w))


def _fibonacci_sphere(n: int) -> np.ndarray:
    k = np.arange(n)
    phi = math.pi * (3.0 - math.sqrt(5.0))
    z = 1.0 - 2.0 * (k + 0.5) / n
    r = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    return np.stack([r * np.cos(phi * k), r * np.sin(phi * k), z], axis=1)


_AXES6 = np.vstack([np.eye(3), -np.eye(3)])


def _null_shoot_endpoint(spec: Metric, x: Point, v: np.ndarray, t_target: float,
                         s_cap: float):
    """Spatial endpoint of the null geodesic from x at coordinate time t_target.

    Returns ("embedded"|chart_id, spatial array, arrival parameter) or None.
    Exact closed forms cover the constant-curvature cases (great circles,
    straight lines, lines clearing the bump support); they are the inner loop
    of the connection shooting, and a consistency test pins them against the
    RK integrator.
    """
    if isinstance(spec, ProductSphere):
        X = spec.embed(x)
        W = sphere_embedding_tangent(x.chart_id, x.spatial, v[1:])
        speed = float(np.linalg.norm(W))
        s_arr = (t_target - x.t) / v[0]
        ang = speed * s_arr
        Y = math.cos(ang) * X + math.sin(ang) * W / speed
        return ("embedded", Y, s_arr)
    if spec.kind == "Minkowski":
        s_arr = (t_target - x.t) / v[0]
        return (DEFAULT_CHART, x.spatial + s_arr * v[1:], s_arr)
    if spec.kind == "BumpMinkowski":
        s_arr = (t_target - x.t) / v[0]
        end = x.spatial + s_arr * v[1:]
        if _segment_clears_ball(x.spatial, end, spec.center, spec.radius):
            return (DEFAULT_CHART, end, s_arr)
    segs, term, end = _integrate_segments(spec, x, v, s_cap, None, False,
                                          t_stop=t_target)
    if term != "reached_time":
        return None
    z = segs[-1].sol(end)
    return (segs[-1].chart_id, z[1:4], float(end))


def _spatial_gap(spec: Metric, state_chart: str, u: np.ndarray, y: Point) -> np.ndarray:
    if state_chart == "embedded":
        return u - spec.embed(y)
    if isinstance(spec, ProductSphere):
        return sphere_chart_to_embedding(state_chart, u) - spec.embed(y)
    return u - y.spatial


def _chord_direction(spec: Metric, x: Point, y: Point) -> Optional[np.ndarray]:
    if isinstance(spec, ProductSphere):
        X = spec.embed(x)
        Y = spec.embed(y)
        w4 = Y - float(X @ Y) * X
        if np.linalg.norm(w4) < 1e-8:
            return None
        # pull the embedded tangent back through the chart differential
        h = 1e-6
        u = x.spatial
        J = np.empty((4, 3))
        for k in range(3):
            up = u.copy()
            um = u.copy()
            up[k] += h
            um[k] -= h
            J[:, k] = (sphere_chart_to_embedding(x.chart_id, up)
                       - sphere_chart_to_embedding(x.chart_id, um)) / (2 * h)
        e, *_ = np.linalg.lstsq(J, w4, rcond=None)
        n = np.linalg.norm(e)
        return e / n if n > 0 else None
    d = y.spatial - x.spatial
    n = np.linalg.norm(d)
    return d / n if n > 0 else None


def null_connect(spec: Metric, x: Point, y: Point,
                 tol_hit: float = TOL_HIT) -> List[Tuple[TangentVector, float]]:
    """All future null directions at x whose geodesic passes through y.

    Directions are g+-unit; each entry carries its arrival parameter.
    Multi-start Gauss-Newton over the direction 2-sphere, solutions merged
    when their g+ distance is below CLUSTER_TOL.  Empty when y is off the
    light cone of x.
    """
    dt = y.t - x.t
    if dt <= 0.0:
        return []
    x4 = x.array()
    t_target = y.t
    scale = 1.0 + abs(dt)
    # crude cap on the affine parameter: v0 >= ~0.4 on the catalog
    s_cap = 6.0 * dt + 6.0

    def shoot(e: np.ndarray):
        """Integrate the null geodesic with spatial direction e to t = t_y."""
        v = _null_vector_from_spatial(spec, x, e)
        segs, term, end = _integrate_segments(spec, x, v, s_cap, None, False,
                                              t_stop=t_target)
        if term != "reached_time":
            return None
        z = segs[-1].sol(end)
        gap = _spatial_gap(spec, segs[-1].chart_id, z[1:4], y)
        return v, float(end), gap

    def refine(e0: np.ndarray):
        e = e0 / np.linalg.norm(e0)
        out = shoot(e)
        if out is None:
            return None
        stalls = 0
        prev = math.inf
        for _ in range(14):
            v, arr, gap = out
            gn = float(np.linalg.norm(gap))
            if gn < 1e-10 * scale:
                break
            # Gauss-Newton with a finite-difference Jacobian bottoms out
            # around the FD accuracy; bail when progress stops
            if gn > 0.5 * prev:
                stalls += 1
                if stalls >= 2:
                    break
            else:
                stalls = 0
            prev = gn
            h = 1e-7
            cols = []
            ok = True
            for k in range(3):
                ep = e.copy()
                ep[k] += h
                op = shoot(ep / np.linalg.norm(ep))
                if op is None:
                    ok = False
                    break
                cols.append((op[2] - gap) / h)
            if not ok:
                return None
            J = np.stack(cols, axis=1)
            de, *_ = np.linalg.lstsq(J, -gap, rcond=None)
            if np.linalg.norm(de) > 2.0:
                de *= 2.0 / np.linalg.norm(de)
            e = e + de
            n = np.linalg.norm(e)
            if n < 1e-12:
                return None
            e = e / n
            out = shoot(e)
            if out is None:
                return None
        v, arr, gap = out
        if np.linalg.norm(gap) < tol_hit * scale:
            return v, arr, float(np.linalg.norm(gap))
        return None

    gp = spec.gplus_at(x)

    def cluster_key(sols, v):
        for i, (vi, _, _) in enumerate(sols):
            d = v - vi
            if math.sqrt(float(d @ gp @ d)) < CLUSTER_TOL:
                return i
        return None

    solutions: List[Tuple[np.ndarray, float, float]] = []

    def absorb(res):
        if res is None:
            return
        v, arr, gapn = res
        i = cluster_key(solutions, v)
        if i is None:
            solutions.append((v, arr, gapn))
        elif gapn < solutions[i][2]:
            solutions[i] = (v, arr, gapn)

    stage1 = []
    chord = _chord_direction(spec, x, y)
    if chord is not None:
        stage1.append(chord)
    stage1.extend(_AXES6)
    converged_starts = 0
    for e0 in stage1:
        res = refine(np.asarray(e0, dtype=float))
        if res is not None:
            converged_starts += 1
        absorb(res)

    if len(solutions) != 1 or converged_starts < max(1, len(stage1) // 3):
        for e0 in _fibonacci_sphere(32):
            absorb(refine(e0))

    out = [(TangentVector(x, tuple(v)), arr) for v, arr, _ in solutions]
    out.sort(key=lambda item: (item[1],) + item[0].comp)
    return out


def chronological_relation(spec: Metric, x: Point, y: Point) -> str:
    """One of "chronological" (x << y), "causal_only", "unrelated"."""
    if time_separation(spec, x, y) > TOL_TAU:
        return "chronological"
    if null_connect(spec, x, y):
        return "causal_only"
    return "unrelated"


# ---------------------------------------------------------------------------
# cut locus


@dataclass(frozen=True)
class CutRecord:
    """Cut locus data along one null geodesic.

    rho is the last parameter at which the geodesic is still the earliest
    causal arrival (sup of s with tau(x, gamma(s)) = 0, by bisection).  The
    conjugate and second-geodesic routes are recorded when found; when the
    geodesic leaves the region first, rho is the exit parameter and
    no_cut_inside_region is set.
    """

    conjugate_time: Optional[float]
    second_geodesic_time: Optional[float]
    rho: float
    no_cut_inside_region: bool = False


def cut_time(spec: Metric, x: Point, xi, region: Optional[Region] = None,
             max_param: Optional[float] = None, with_conjugate: bool = True,
             probe_grid: int = 4) -> CutRecord:
    comp = _as_components(xi)
    if comp[0] <= 0.0:
        raise ValueError("cut_time expects a future-pointing null direction")
    if region is None:
        region = default_region(spec)
    if max_param is None:
        max_param = 1.2 * (region.t_max - x.t) / comp[0] + 1.0

    path = integrate_geodesic(spec, x, comp, max_param, region)
    s_end = path.end_param
    if s_end <= 0.0:
        raise GeodesicError("geodesic leaves the region immediately")

    def chronological(s: float) -> bool:
        # Ultrastatic kinds get the margin dt - d, which crosses zero
        # linearly at the cut point.  tau itself is useless here: before the
        # cut gamma(s) sits exactly on the cone, so sqrt(dt^2 - d^2)
        # amplifies integration noise in d to ~1e-6 and trips the tau
        # threshold far too early.  The margin noise floor along integrated
        # paths is ~1e-10; the 1e-8 threshold sits above it and costs only
        # ~5e-9 of bias in rho (the margin slope at the cut is order one).
        q = path.point(s)
        if spec.ultrastatic:
            return (q.t - x.t) - spatial_distance(spec, x, q) > 1e-8
        return time_separation(spec, x, q) > TOL_TAU

    conj = first_conjugate_time(spec, x, comp, s_end, region) if with_conjugate else None

    gp = spec.gplus_at(x)
    xi_unit = comp / math.sqrt(float(comp @ gp @ comp))

    def second_geodesic_at(s: float) -> bool:
        """Does a null geodesic other than gamma itself reach gamma(s)?"""
        for vec, _ in null_connect(spec, x, path.point(s)):
            d = vec.array() - xi_unit
            if math.sqrt(float(d @ gp @ d)) > 10.0 * CLUSTER_TOL:
                return True
        return False

    if not chronological(s_end):
        return CutRecord(conj, None, s_end, no_cut_inside_region=True)

    lo, hi = 0.0, s_end
    for _ in range(BISECT_DEPTH):
        mid = 0.5 * (lo + hi)
        if chronological(mid):
            hi = mid
        else:
            lo = mid
    rho = 0.5 * (lo + hi)

    # The second-geodesic entry records the parameter along gamma at which
    # another null geodesic from x arrives.  Probe a coarse grid below the
    # bisected value (an earlier arrival would mean the tau route missed a
    # cut) and then the bisected point itself.
    second = None
    probes = list(np.linspace(0.2 * rho, 0.9 * rho, max(probe_grid, 0)))
    for s in probes:
        if second_geodesic_at(s):
            second = float(s)
            break
    if second is None and second_geodesic_at(rho):
        second = float(rho)

    return CutRecord(conj, second, rho, no_cut_inside_region=False)
