"""Vinberg's equation system for projective reflection data, its gauge action
and Jacobian, rank analysis, the rank-sum identity, the local deformation
dimension count, and parametrized Cartan families with curve extraction.

A point is a tuple of covectors alpha_1..alpha_f and vectors b_1..b_f in
R^{n+1}.  The equations fix alpha_i b_i = 2, force alpha_i b_j = alpha_j b_i
= 0 on order-2 ridges, and fix the product alpha_i b_j alpha_j b_i =
4 cos^2(pi/n_ij) on higher-order ridges.  Rescalings (d_1..d_f) and a joint
change of basis g act without changing the residuals; the gauge group has
dimension f + (n+1)^2 - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from coxdeform import lorentz
from coxdeform.numerics import DEFAULT_RANK_POLICY, RankPolicy, numerical_rank  # noqa: F401

RESIDUAL_TOL = 1e-9


class VinbergError(ValueError):
    pass


@dataclass
class VinbergPoint:
    """Reflection data: covector rows ``alphas`` (f x (n+1)) and vector rows
    ``bs`` (f x (n+1), the reflection vectors b_i)."""

    alphas: np.ndarray
    bs: np.ndarray
    facets: tuple = None

    def __post_init__(self):
        self.alphas = np.asarray(self.alphas, dtype=float)
        self.bs = np.asarray(self.bs, dtype=float)
        if self.alphas.shape != self.bs.shape:
            raise VinbergError("alphas and bs must have matching shapes")
        if self.facets is None:
            self.facets = tuple(range(1, self.alphas.shape[0] + 1))

    @property
    def f(self):
        return self.alphas.shape[0]

    @property
    def dim(self):
        return self.alphas.shape[1]

    def cartan(self):
        """Entries a_ij = alpha_i b_j."""
        return self.alphas @ self.bs.T

    def flatten(self):
        return np.concatenate([self.alphas.ravel(), self.bs.ravel()])

    @classmethod
    def unflatten(cls, x, f, dim, facets=None):
        x = np.asarray(x, dtype=float)
        return cls(x[:f * dim].reshape(f, dim), x[f * dim:].reshape(f, dim), facets)


class EquationIndex:
    """Index sets of the equation system for one orbifold (or bare pattern).

    E1: one diagonal equation per facet.  E2: order-2 ridges, two equations
    each.  E3: ridges of order >= 3, one product equation each.  E4:
    non-adjacent pairs, inequalities only.  Row order of the residual vector
    and Jacobian: the E2 first-slot block, the E2 second-slot block, the E3
    block, then the E1 block; pairs in lexicographic order throughout.
    """

    def __init__(self, facets, n, e2, e3_orders, e4):
        self.facets = tuple(facets)
        self.n = int(n)
        self.e2 = tuple(sorted(tuple(p) for p in e2))
        self.e3_orders = {tuple(p): int(m) for p, m in dict(e3_orders).items()}
        self.e3 = tuple(sorted(self.e3_orders))
        self.e4 = tuple(sorted(tuple(p) for p in e4))
        self.pos = {facet: k for k, facet in enumerate(self.facets)}

    @classmethod
    def from_orbifold(cls, Q):
        e3 = {p: Q.order(*p) for p in Q.e3_pairs()}
        return cls(Q.base.facets, Q.n, Q.e2_pairs(), e3, Q.e4_pairs())

    @property
    def f(self):
        return len(self.facets)

    @property
    def N(self):
        return self.f + 2 * len(self.e2) + len(self.e3)

    def rows(self):
        out = [("e2a", p) for p in self.e2]
        out += [("e2b", p) for p in self.e2]
        out += [("e3", p) for p in self.e3]
        out += [("e1", (i, i)) for i in self.facets]
        return out

    def e3_target(self, pair):
        m = self.e3_orders[tuple(pair)]
        return 4.0 * math.cos(math.pi / m) ** 2


def phi_eval(Q_or_index, p):
    """Residuals of Vinberg's equations at a point, length N = f + e + e2."""
    index = _as_index(Q_or_index)
    a = p.cartan()
    pos = index.pos
    out = []
    for kind, (i, j) in index.rows():
        ii, jj = pos[i], pos[j]
        if kind == "e2a":
            out.append(a[ii, jj])
        elif kind == "e2b":
            out.append(a[jj, ii])
        elif kind == "e3":
            out.append(a[ii, jj] * a[jj, ii] - index.e3_target((i, j)))
        else:
            out.append(a[ii, ii] - 2.0)
    return np.array(out)


def phi_jacobian(Q_or_index, p):
    """Jacobian of :func:`phi_eval`, an N x 2(n+1)f matrix of (n+1)-entry
    blocks: columns are grouped as the f alpha-blocks then the f b-blocks."""
    index = _as_index(Q_or_index)
    a = p.cartan()
    f, dim = p.f, p.dim
    pos = index.pos
    rows = index.rows()
    M = np.zeros((len(rows), 2 * dim * f))

    def ablock(k):
        return slice(k * dim, (k + 1) * dim)

    def bblock(k):
        return slice((f + k) * dim, (f + k + 1) * dim)

    for r, (kind, (i, j)) in enumerate(rows):
        ii, jj = pos[i], pos[j]
        if kind == "e2a":
            M[r, ablock(ii)] = p.bs[jj]
            M[r, bblock(jj)] = p.alphas[ii]
        elif kind == "e2b":
            M[r, ablock(jj)] = p.bs[ii]
            M[r, bblock(ii)] = p.alphas[jj]
        elif kind == "e3":
            M[r, ablock(ii)] = a[jj, ii] * p.bs[jj]
            M[r, ablock(jj)] = a[ii, jj] * p.bs[ii]
            M[r, bblock(ii)] = a[ii, jj] * p.alphas[jj]
            M[r, bblock(jj)] = a[jj, ii] * p.alphas[ii]
        else:
            M[r, ablock(ii)] = p.bs[ii]
            M[r, bblock(ii)] = p.alphas[ii]
    return M


def _as_index(Q_or_index):
    if isinstance(Q_or_index, EquationIndex):
        return Q_or_index
    return EquationIndex.from_orbifold(Q_or_index)


def hyperbolic_point(realization):
    """The solution obtained from a hyperbolic realization:
    alpha_i = 2 <nu_i, .> and b_i = nu_i."""
    nus = realization.normals
    J = lorentz.LorentzForm(nus.shape[1]).matrix
    return VinbergPoint(2.0 * nus @ J, nus.copy(), tuple(realization.Q.base.facets))


def apply_gauge(p, d, g):
    """The action (d, g): alpha_i -> d_i alpha_i g^{-1}, b_i -> d_i^{-1} g b_i.

    Requires positive d_i and invertible g with |det g| = 1; the residuals of
    phi_eval are unchanged.
    """
    d = np.asarray(d, dtype=float)
    g = np.asarray(g, dtype=float)
    if d.shape != (p.f,) or np.any(d <= 0):
        raise VinbergError("need f positive rescaling factors")
    det = np.linalg.det(g)
    if abs(det) < 1e-12:
        raise VinbergError("gauge matrix is singular")
    if abs(abs(det) - 1.0) > 1e-9:
        raise VinbergError(f"gauge matrix must have |det| = 1, got {det}")
    ginv = np.linalg.inv(g)
    return VinbergPoint(d[:, None] * (p.alphas @ ginv),
                        (p.bs @ g.T) / d[:, None], p.facets)


def random_gauge(f, dim, rng):
    """A random gauge element: log-uniform rescalings and |det| = 1 matrix."""
    d = np.exp(rng.uniform(-0.7, 0.7, size=f))
    while True:
        g = rng.normal(size=(dim, dim))
        det = np.linalg.det(g)
        if abs(det) > 1e-6:
            break
    g = g / abs(det) ** (1.0 / dim)
    return d, g


def gauge_directions(p):
    """Tangent vectors of the gauge orbit at p, one row per generator:
    the f rescaling directions and the (n+1)^2 - 1 traceless basis directions.
    All rows lie in ker(D phi) at any solution point."""
    f, dim = p.f, p.dim
    rows = []
    for i in range(f):
        v = np.zeros(2 * dim * f)
        v[i * dim:(i + 1) * dim] = p.alphas[i]
        v[(f + i) * dim:(f + i + 1) * dim] = -p.bs[i]
        rows.append(v)
    basis = []
    for k in range(dim):
        for l in range(dim):
            if k == l:
                continue
            X = np.zeros((dim, dim))
            X[k, l] = 1.0
            basis.append(X)
    for k in range(dim - 1):
        X = np.zeros((dim, dim))
        X[k, k] = 1.0
        X[k + 1, k + 1] = -1.0
        basis.append(X)
    for X in basis:
        v = np.zeros(2 * dim * f)
        for i in range(f):
            v[i * dim:(i + 1) * dim] = -p.alphas[i] @ X
            v[(f + i) * dim:(f + i + 1) * dim] = X @ p.bs[i]
        rows.append(v)
    return np.array(rows)


def gauge_dimension(f, dim):
    return f + dim * dim - 1


# -- rank reports --------------------------------------------------------------

@dataclass
class JacobianReport:
    """Numerical-rank analysis of one Jacobian, with the full spectrum kept
    for auditability."""

    label: str
    shape: tuple
    singular_values: np.ndarray
    rank: int
    kernel_dim: int
    threshold: float
    gap: float
    uncertain: bool
    gauge_dim: int = None
    full_rank: bool = None
    deformation_dim: int = None
    kernel_minus_gauge: int = None
    formula_dim: int = None


def jacobian_report(label, M, policy=DEFAULT_RANK_POLICY):
    rr = numerical_rank(M, policy)
    return JacobianReport(label, M.shape, rr.singular_values, rr.rank,
                          M.shape[1] - rr.rank, rr.threshold, rr.gap, rr.uncertain)


def local_deformation_dimension(Q, p, policy=DEFAULT_RANK_POLICY):
    """Rank analysis of the equation Jacobian at a solution point.

    When the Jacobian has full rank N, the solution set is locally a manifold
    and the dimension of its gauge quotient is 2(n+1)f - N - (f + (n+1)^2 - 1),
    which the report cross-checks against the closed form e_+ - n - 2 delta_P.
    Otherwise kernel-minus-gauge is reported as an upper-bound witness only.
    """
    from coxdeform import orbifold as ob

    index = EquationIndex.from_orbifold(Q)
    resid = phi_eval(index, p)
    if np.linalg.norm(resid, ord=np.inf) > RESIDUAL_TOL:
        raise VinbergError(
            f"point is not a solution (max residual {np.abs(resid).max():.3e})")
    M = phi_jacobian(index, p)
    report = jacobian_report("phi", M, policy)
    report.gauge_dim = gauge_dimension(p.f, p.dim)
    G = gauge_directions(p)
    gauge_rank = numerical_rank(G, policy).rank
    if gauge_rank < report.gauge_dim:
        raise VinbergError(
            f"gauge orbit is not free at this point "
            f"(gauge-direction rank {gauge_rank} < {report.gauge_dim})")
    c = ob.counts(Q)
    report.formula_dim = c.eplus - Q.n - 2 * c.delta
    report.full_rank = report.rank == index.N
    if report.full_rank:
        report.deformation_dim = 2 * p.dim * p.f - index.N - report.gauge_dim
        if report.deformation_dim != report.formula_dim:
            raise VinbergError("dimension bookkeeping identity failed")  # integer identity
    else:
        report.kernel_minus_gauge = report.kernel_dim - report.gauge_dim
    return report


@dataclass
class RankSumReport:
    rank_phi: JacobianReport
    rank_psi: JacobianReport
    e2: int
    weakly_orderable: bool
    identity_holds: bool
    reduction_zero_block: float = None
    staircase_rank: int = None
    reduction_rank_match: bool = None


def check_rank_sum(Q, p, policy=DEFAULT_RANK_POLICY):
    """Verify rank(D phi) = rank(D psi) + e2 at a hyperbolic point.

    Also replays the row/column reduction behind the identity: add each E2
    first-slot row to its second-slot row, scale E3 rows by 1/a_ij and E1
    rows by 2, scale the alpha-columns by 2 with the first coordinate of each
    block negated, then subtract the right half from the left.  The remaining
    non-E2a rows must vanish on the left (they become two copies of the
    hyperbolic-equation Jacobian), and the surviving E2a block must have full
    row rank e2 exactly when the orbifold is weakly orderable with qualifying
    sets in general position.
    """
    from coxdeform import orbifold as ob

    index = EquationIndex.from_orbifold(Q)
    resid = phi_eval(index, p)
    if np.linalg.norm(resid, ord=np.inf) > RESIDUAL_TOL:
        raise VinbergError("point is not a solution of the equation system")
    J = lorentz.LorentzForm(p.dim).matrix
    if np.abs(p.alphas - 2.0 * p.bs @ J).max() > 1e-7:
        raise VinbergError("not a hyperbolic point (alpha_i != 2 <b_i, .>)")

    f, dim = p.f, p.dim
    a = p.cartan()
    pos = index.pos
    M = phi_jacobian(index, p)
    psi = lorentz.psi_jacobian(Q, p.bs)
    rphi = jacobian_report("phi", M, policy)
    rpsi = jacobian_report("psi", psi, policy)
    e2 = len(index.e2)
    wo = bool(ob.weak_order_combinatorial(Q))

    R = M.copy()
    n2 = len(index.e2)
    for k, (i, j) in enumerate(index.e2):
        R[n2 + k] += R[k]
    for k, (i, j) in enumerate(index.e3):
        R[2 * n2 + k] /= a[pos[i], pos[j]]
    R[2 * n2 + len(index.e3):] *= 2.0
    R[:, :dim * f] *= 2.0
    for i in range(f):
        R[:, i * dim] *= -1.0
    R[:, :dim * f] -= R[:, dim * f:]

    zero_block = float(np.abs(R[n2:, :dim * f]).max())
    staircase = numerical_rank(R[:n2, :dim * f], policy).rank
    reduced_rank = numerical_rank(R, policy).rank

    return RankSumReport(
        rank_phi=rphi, rank_psi=rpsi, e2=e2, weakly_orderable=wo,
        identity_holds=(rphi.rank == rpsi.rank + e2),
        reduction_zero_block=zero_block,
        staircase_rank=staircase,
        reduction_rank_match=(reduced_rank == rphi.rank))


# -- membership in the open solution domain ------------------------------------

@dataclass
class UMembershipReport:
    has_interior_point: bool
    interior_point: np.ndarray
    alphas_span: bool
    signs_ok: bool
    open_condition_ok: bool
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return self.has_interior_point and self.alphas_span and \
            self.signs_ok and self.open_condition_ok


def check_U_membership(Q_or_index, p, tol=1e-9):
    """Open conditions cutting out the solution domain: a common point v with
    alpha_i(v) > 0 for every i, the alphas spanning the dual space, negative
    off-diagonal entries on E3 and E4 pairs, and a_ij a_ji > 4 on E4 pairs."""
    from scipy.optimize import linprog

    index = _as_index(Q_or_index)
    a = p.cartan()
    pos = index.pos
    failures = []

    scale = max(np.abs(p.alphas).max(), 1e-30)
    nvar = p.dim
    A_ub = np.hstack([-p.alphas, np.ones((p.f, 1))])
    c = np.zeros(nvar + 1)
    c[-1] = -1.0
    bounds = [(-1, 1)] * nvar + [(None, 1)]
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(p.f), bounds=bounds, method="highs")
    margin = -res.fun if res.success else -np.inf
    has_point = bool(res.success and margin > tol * scale)
    point = res.x[:nvar] if res.success else np.zeros(nvar)
    if not has_point:
        failures.append("no common interior point")

    span = numerical_rank(p.alphas).rank == p.dim
    if not span:
        failures.append("alphas do not span the dual space")

    signs_ok = True
    for i, j in index.e3 + index.e4:
        if not (a[pos[i], pos[j]] < 0 and a[pos[j], pos[i]] < 0):
            signs_ok = False
            failures.append(f"non-negative entry on pair ({i},{j})")
    open_ok = True
    for i, j in index.e4:
        prod = a[pos[i], pos[j]] * a[pos[j], pos[i]]
        if not prod > 4.0:
            open_ok = False
            failures.append(f"open condition fails on ({i},{j}): product {prod:.6f}")

    return UMembershipReport(has_point, point, span, signs_ok, open_ok, failures)


# -- parametrized Cartan families and curve extraction --------------------------

class ParametrizedFamily:
    """A Cartan matrix pattern with free positive parameters on designated
    entry pairs.  Parameter t on pair (i, j) sets a_ij = -t and keeps the
    product a_ij a_ji at its base value, so parameters move along the diagonal
    gauge's cycle coordinates."""

    def __init__(self, base, param_pairs):
        self.base = np.asarray(base, dtype=float)
        self.param_pairs = [tuple(p) for p in param_pairs]
        self.products = [self.base[i - 1, j - 1] * self.base[j - 1, i - 1]
                         for i, j in self.param_pairs]

    @property
    def nparams(self):
        return len(self.param_pairs)

    def matrix(self, *params):
        if len(params) != self.nparams:
            raise VinbergError(f"family takes {self.nparams} parameters")
        A = self.base.copy()
        for (i, j), prod, t in zip(self.param_pairs, self.products, params):
            if t <= 0:
                raise VinbergError("family parameters must be positive")
            A[i - 1, j - 1] = -t
            A[j - 1, i - 1] = -prod / t
        return A


GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0

ESSELMANN_ORDERS = {(1, 2): 5, (2, 3): 5, (3, 4): 3, (4, 5): 3, (5, 6): 5,
                    (1, 4): 3, (4, 6): 3,
                    (1, 3): 2, (1, 5): 2, (1, 6): 2, (2, 4): 2, (2, 5): 2,
                    (2, 6): 2, (3, 5): 2, (3, 6): 2}


def esselmann_base_matrix():
    """The Esselmann family at parameters (1, 1), its hyperbolic point."""
    g = GOLDEN
    return np.array([
        [2, -g, 0, -1, 0, 0],
        [-g, 2, -g, 0, 0, 0],
        [0, -g, 2, -1, 0, 0],
        [-1, 0, -1, 2, -1, -1],
        [0, 0, 0, -1, 2, -g],
        [0, 0, 0, -1, -g, 2],
    ], dtype=float)


def esselmann_family():
    """The two-parameter family with free entries x = -a_14 and y = -a_46."""
    return ParametrizedFamily(esselmann_base_matrix(), [(1, 4), (4, 6)])


def esselmann_polynomial(x, y):
    """The quintic whose zero set carries the family's rank-5 locus:
    det A(x, y) * 2xy equals this polynomial."""
    r5 = math.sqrt(5.0)
    return (8.0 * x - (5.0 + r5) * y - (6.0 - 2.0 * r5) * x * y
            - (5.0 + r5) * x * x * y + 8.0 * x * y * y)


def esselmann_polynomial_gradient(x, y):
    r5 = math.sqrt(5.0)
    fx = 8.0 - (6.0 - 2.0 * r5) * y - 2.0 * (5.0 + r5) * x * y + 8.0 * y * y
    fy = -(5.0 + r5) - (6.0 - 2.0 * r5) * x - (5.0 + r5) * x * x + 16.0 * x * y
    return np.array([fx, fy])


@dataclass
class CurveSamples:
    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray              # det grid, shape (len(ys), len(xs))
    segments: list                  # [( (x0,y0), (x1,y1) ), ...]

    def points(self):
        if not self.segments:
            return np.zeros((0, 2))
        return np.array([q for seg in self.segments for q in seg])

    def distance_to(self, x, y):
        pts = self.points()
        if not len(pts):
            return np.inf
        return float(np.min(np.hypot(pts[:, 0] - x, pts[:, 1] - y)))


def family_curve(family, box=(0.5, 2.0, 0.5, 2.0), res=101):
    """Sample det(A(x, y)) on a grid and extract its zero set by sign-change
    contouring (marching squares with linear interpolation)."""
    if family.nparams != 2:
        raise VinbergError("curve extraction needs exactly two parameters")
    x0, x1, y0, y1 = box
    xs = np.linspace(x0, x1, res)
    ys = np.linspace(y0, y1, res)
    values = np.empty((res, res))
    for r, y in enumerate(ys):
        mats = np.stack([family.matrix(x, y) for x in xs])
        values[r] = np.linalg.det(mats)
    segments = marching_squares(xs, ys, values)
    return CurveSamples(xs, ys, values, segments)


def marching_squares(xs, ys, values):
    """Zero-level segments of a sampled scalar field, one or two per cell."""

    def cross(xa, ya, va, xb, yb, vb):
        t = va / (va - vb)
        return (xa + t * (xb - xa), ya + t * (yb - ya))

    segments = []
    for r in range(len(ys) - 1):
        for c in range(len(xs) - 1):
            corners = [
                (xs[c], ys[r], values[r, c]),
                (xs[c + 1], ys[r], values[r, c + 1]),
                (xs[c + 1], ys[r + 1], values[r + 1, c + 1]),
                (xs[c], ys[r + 1], values[r + 1, c]),
            ]
            crossings = []
            for k in range(4):
                xa, ya, va = corners[k]
                xb, yb, vb = corners[(k + 1) % 4]
                if va == 0.0 and vb == 0.0:
                    crossings.append((xa, ya))
                    crossings.append((xb, yb))
                elif (va < 0) != (vb < 0) or (va == 0.0) != (vb == 0.0):
                    if va == 0.0:
                        crossings.append((xa, ya))
                    elif vb == 0.0:
                        pass  # counted as the next corner's start
                    else:
                        crossings.append(cross(xa, ya, va, xb, yb, vb))
            if len(crossings) >= 2:
                if len(crossings) == 4:
                    segments.append((crossings[0], crossings[1]))
                    segments.append((crossings[2], crossings[3]))
                else:
                    segments.append((crossings[0], crossings[-1]))
    return segments
