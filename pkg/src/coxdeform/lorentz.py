"""Lorentzian linear algebra and hyperbolic realization of Coxeter orbifolds.

A compact hyperbolic Coxeter polytope is encoded by unit spacelike normals
nu_1..nu_f in R^{1,n} satisfying <nu_i, nu_i> = 1 and, on each ridge,
<nu_i, nu_j> = -cos(pi/n_ij).  This module assembles that equation system and
its Jacobian, realizes simplices directly from the Gram matrix, and solves the
general case by Gauss-Newton iteration from a library of seed guesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from coxdeform.numerics import DEFAULT_RANK_POLICY, numerical_rank

RESIDUAL_TOL = 1e-10
SIGNATURE_EIG_TOL = 1e-9
DIVERGENCE_THRESHOLD = -1.0   # non-adjacent facets: <nu_i, nu_j> below this
DIVERGENCE_MARGIN = 1e-6      # rejects boundary (asymptotic-hyperplane) noise


class RealizationError(ValueError):
    """Raised when data cannot describe a compact hyperbolic polytope."""


class ConvergenceError(RuntimeError):
    """Raised when the Gauss-Newton iteration fails to converge."""


@dataclass(frozen=True)
class LorentzForm:
    """The bilinear form -x_1 y_1 + x_2 y_2 + ... + x_{n+1} y_{n+1}."""

    dim: int  # n + 1

    @property
    def matrix(self):
        J = np.eye(self.dim)
        J[0, 0] = -1.0
        return J

    def inner(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return -x[..., 0] * y[..., 0] + np.sum(x[..., 1:] * y[..., 1:], axis=-1)


def lorentz_gram(normals):
    """Pairwise Lorentz inner products of row vectors."""
    normals = np.asarray(normals, dtype=float)
    J = LorentzForm(normals.shape[1]).matrix
    return normals @ J @ normals.T


def gram_matrix(Q):
    """Prescribed Gram matrix of an orbifold: 1 on the diagonal and
    -cos(pi/n_ij) for adjacent pairs; non-adjacent entries are unknown (NaN).
    """
    f = Q.f
    facets = list(Q.base.facets)
    G = np.full((f, f), np.nan)
    np.fill_diagonal(G, 1.0)
    pos = {facet: k for k, facet in enumerate(facets)}
    for (i, j), m in Q.orders.items():
        c = -math.cos(math.pi / m)
        G[pos[i], pos[j]] = G[pos[j], pos[i]] = c
    return G


# -- hyperbolic equation system -----------------------------------------------

def psi_rows(Q):
    """Fixed equation order: the f diagonal rows first (by facet id), then one
    row per ridge in lexicographic pair order."""
    diag = [(i, i) for i in Q.base.facets]
    pairs = sorted(Q.orders)
    return diag + pairs


def psi_eval(Q, normals):
    """Residuals of the hyperbolic equations at the given normals:
    2<nu_i,nu_i> - 2 on diagonal rows, 2<nu_i,nu_j> + 2cos(pi/n_ij) on ridge
    rows.  Length f + e."""
    normals = np.asarray(normals, dtype=float)
    pos = {facet: k for k, facet in enumerate(Q.base.facets)}
    gram = lorentz_gram(normals)
    out = []
    for i, j in psi_rows(Q):
        a, b = pos[i], pos[j]
        if i == j:
            out.append(2.0 * gram[a, a] - 2.0)
        else:
            out.append(2.0 * gram[a, b] + 2.0 * math.cos(math.pi / Q.order(i, j)))
    return np.array(out)


def psi_jacobian(Q, normals):
    """Jacobian of :func:`psi_eval` in the flattened normals, an
    (f+e) x (n+1)f matrix of (n+1)-entry blocks: row (i,i) carries
    2 alpha_i in block i; row (i,j) carries alpha_j in block i and alpha_i in
    block j, where alpha_i = 2 nu_i^t J."""
    normals = np.asarray(normals, dtype=float)
    f, dim = normals.shape
    J = LorentzForm(dim).matrix
    alphas = 2.0 * normals @ J
    pos = {facet: k for k, facet in enumerate(Q.base.facets)}
    rows = psi_rows(Q)
    M = np.zeros((len(rows), dim * f))
    for r, (i, j) in enumerate(rows):
        a, b = pos[i], pos[j]
        if i == j:
            M[r, a * dim:(a + 1) * dim] = 2.0 * alphas[a]
        else:
            M[r, a * dim:(a + 1) * dim] = alphas[b]
            M[r, b * dim:(b + 1) * dim] = alphas[a]
    return M


# -- realizations -------------------------------------------------------------

class HyperbolicRealization:
    """Unit spacelike normals of a realized compact polytope, with the
    residual norm, per-vertex compactness flags, and divergence checks for
    non-adjacent facet pairs."""

    def __init__(self, Q, normals, validate=True):
        self.Q = Q
        self.normals = np.asarray(normals, dtype=float)
        self.residual_norm = float(np.linalg.norm(psi_eval(Q, self.normals)))
        self.vertex_flags = {}
        self.nonadjacent_products = {}
        if Q.base.vertices is not None:
            for V in Q.base.vertices:
                x = self.vertex_point(V)
                self.vertex_flags[V] = bool(
                    LorentzForm(self.normals.shape[1]).inner(x, x) < 0)
        gram = lorentz_gram(self.normals)
        pos = {facet: k for k, facet in enumerate(Q.base.facets)}
        for i, j in Q.e4_pairs():
            self.nonadjacent_products[(i, j)] = float(gram[pos[i], pos[j]])
        if validate:
            self.check_valid()

    @property
    def dim(self):
        return self.normals.shape[1]

    def alphas(self):
        """Facet covectors alpha_i = 2 <nu_i, .> as a dict facet -> row."""
        J = LorentzForm(self.dim).matrix
        rows = 2.0 * self.normals @ J
        return {facet: rows[k] for k, facet in enumerate(self.Q.base.facets)}

    def vertex_point(self, vertex):
        """The point where the facet hyperplanes of ``vertex`` meet, scaled to
        first coordinate 1 when possible."""
        pos = {facet: k for k, facet in enumerate(self.Q.base.facets)}
        J = LorentzForm(self.dim).matrix
        A = np.array([self.normals[pos[i]] @ J for i in sorted(vertex)])
        _, _, Vt = np.linalg.svd(A)
        x = Vt[-1]
        if abs(x[0]) > 1e-12:
            x = x / x[0]
        return x

    def check_valid(self, divergence_threshold=DIVERGENCE_THRESHOLD):
        if self.residual_norm > 1e-8:
            raise RealizationError(
                f"normals do not satisfy the hyperbolic equations "
                f"(residual {self.residual_norm:.3e})")
        bad = [sorted(V) for V, ok in self.vertex_flags.items() if not ok]
        if bad:
            raise RealizationError(f"vertices outside the ball: {bad}")
        for (i, j), val in self.nonadjacent_products.items():
            # strict margin: a product at the threshold up to solver noise is
            # an asymptotic hyperplane pair, not a compact polytope
            if not val < divergence_threshold - DIVERGENCE_MARGIN:
                raise RealizationError(
                    f"non-adjacent facets {i},{j} do not diverge "
                    f"(<nu_i,nu_j> = {val:.6f})")
        return True


def realize_simplex(Q):
    """Directly realize an orbifold based on an n-simplex.

    The prescribed Gram matrix is complete; it must have exactly one negative
    eigenvalue and full rank n+1 (a compact hyperbolic simplex).  The normals
    are read off a factorization G = L J L^t.
    """
    if Q.f != Q.n + 1:
        raise RealizationError("base polytope is not a simplex")
    return realize_gram(Q)


def realize_gram(Q):
    """Realize any orbifold whose prescribed Gram matrix is complete (every
    facet pair adjacent): the f x f matrix must have one negative and n
    positive eigenvalues, the remaining f - n - 1 exactly zero."""
    G = gram_matrix(Q)
    if np.isnan(G).any():
        raise RealizationError("Gram matrix is not fully determined")
    lam, U = np.linalg.eigh(G)
    scale = np.abs(lam).max()
    dim = Q.n + 1
    nonzero = np.abs(lam) > SIGNATURE_EIG_TOL * scale
    if Q.f == dim and not nonzero.all():
        raise RealizationError("zero type: Gram matrix is degenerate (Euclidean)")
    if int(nonzero.sum()) != dim:
        raise RealizationError(
            f"Gram matrix has rank {int(nonzero.sum())}, expected {dim}")
    negatives = int(np.sum(lam < -SIGNATURE_EIG_TOL * scale))
    if negatives != 1:
        raise RealizationError(
            f"wrong signature: {negatives} negative eigenvalues, expected 1")
    order = np.argsort(lam)  # negative eigenvalue first, matching J
    keep = np.concatenate([order[:1], order[-Q.n:]])
    lam, U = lam[keep], U[:, keep]
    L = U * np.sqrt(np.abs(lam))
    return HyperbolicRealization(Q, L)


def solve_hyperbolic_newton(Q, initial=None, tol=RESIDUAL_TOL, max_iter=100):
    """Gauss-Newton solve of the hyperbolic equations.

    Steps are minimum-norm least-squares solutions, which quotients out the
    Lorentz gauge freedom (the Jacobian kernel is dim so(1,n) on the solution
    manifold), with step halving as a safeguard.  Raises ConvergenceError on
    divergence and RealizationError if the converged point fails the
    compactness or divergence checks.
    """
    if initial is None:
        initial = initial_guess(Q)
    x = np.asarray(initial, dtype=float).copy()
    f = Q.f
    dim = Q.n + 1
    if x.shape != (f, dim):
        raise RealizationError(f"initial guess must have shape {(f, dim)}")
    r = psi_eval(Q, x)
    for _ in range(max_iter):
        norm = np.linalg.norm(r)
        if norm < tol:
            return HyperbolicRealization(Q, x)
        J = psi_jacobian(Q, x)
        step, *_ = np.linalg.lstsq(J, r, rcond=None)
        step = step.reshape(f, dim)
        t = 1.0
        for _ in range(25):
            x_new = x - t * step
            r_new = psi_eval(Q, x_new)
            if np.linalg.norm(r_new) < norm:
                break
            t *= 0.5
        else:
            raise ConvergenceError(f"no descent step found at residual {norm:.3e}")
        x, r = x_new, r_new
    raise ConvergenceError(
        f"no convergence after {max_iter} iterations "
        f"(residual {np.linalg.norm(r):.3e})")


def kernel_dimension(Q, normals, policy=DEFAULT_RANK_POLICY):
    """Numerical kernel dimension of the hyperbolic-equation Jacobian; equals
    dim so(1,n) = n(n+1)/2 at every genuine realization."""
    J = psi_jacobian(Q, normals)
    return numerical_rank(J, policy).kernel_dimension(J.shape[1])


def random_lorentz_transform(dim, rng, scale=0.3):
    """A random element of O(1, n-1)+ via the exponential of a so(1,n) matrix."""
    from scipy.linalg import expm

    X = np.zeros((dim, dim))
    v = rng.normal(size=dim - 1) * scale
    W = rng.normal(size=(dim - 1, dim - 1)) * scale
    X[0, 1:] = v
    X[1:, 0] = v
    X[1:, 1:] = (W - W.T) / 2.0
    return expm(X)


# -- seed library --------------------------------------------------------------

def _klein_plane(unit_normal, offset):
    """Lorentz normal of the Klein-model plane x . u = c, oriented so the
    side containing the origin satisfies <nu, x> >= 0."""
    u = np.asarray(unit_normal, dtype=float)
    c = float(offset)
    if not 0 < c < 1:
        raise RealizationError("plane offset must lie in (0, 1)")
    nu = np.concatenate(([-c], -u))
    return nu / math.sqrt(1.0 - c * c)


def _prism_structure(P):
    """Detect prism combinatorics: two non-adjacent caps, quadrilateral sides.
    Returns (cap_a, cap_b, cyclic side order) or None."""
    for a in sorted(P.facets):
        others = [x for x in P.facets if x != a]
        non = [x for x in others if not P.adjacent(a, x)]
        if len(non) != 1:
            continue
        b = non[0]
        sides = [x for x in others if x != b]
        if all(P.adjacent(b, x) and len(P.neighbors(x)) == 4 for x in sides):
            return a, b, _cyclic_order(P, sides)
    return None


def _cyclic_order(P, ring):
    """Arrange mutually adjacent ring facets in cyclic adjacency order."""
    order = [min(ring)]
    rest = set(ring) - {order[0]}
    while rest:
        nxt = sorted(x for x in rest if P.adjacent(order[-1], x))
        if not nxt:
            return None
        order.append(nxt[0])
        rest.remove(nxt[0])
    if not P.adjacent(order[0], order[-1]):
        return None
    return order


def _loebell_structure(P):
    """Detect the two-cap / two-pentagon-ring combinatorics.  Returns
    (top, bottom, upper ring, lower ring) with lower ring w_j between
    u_{j-1} and u_j, or None."""
    if P.f < 10 or P.f % 2 != 0:
        return None
    m = (P.f - 2) // 2
    caps = [x for x in sorted(P.facets) if len(P.neighbors(x)) == m] or sorted(P.facets)
    for top in caps:
        U = P.neighbors(top)
        if len(U) != m:
            continue
        rest = [x for x in P.facets if x != top and x not in U]
        bottoms = [x for x in rest if not any(P.adjacent(x, u) for u in U)]
        if len(bottoms) != 1:
            continue
        bottom = bottoms[0]
        W = P.neighbors(bottom)
        if len(W) != m or set(W) != set(rest) - {bottom}:
            continue
        upper = _cyclic_order(P, U)
        if upper is None:
            continue
        lower = []
        for j in range(m):
            common = [w for w in W
                      if P.adjacent(w, upper[j - 1]) and P.adjacent(w, upper[j])]
            if len(common) != 1:
                lower = None
                break
            lower.append(common[0])
        if lower:
            return top, bottom, upper, lower
    return None


def _doubled_cube_structure(P):
    """Detect three mutually adjacent hexagons and two square triples.
    Returns (hexagons, half1, half2) with each half mapping a hexagon to the
    opposite square of that half, or None."""
    if P.f != 9:
        return None
    hexes = sorted(x for x in P.facets if len(P.neighbors(x)) == 6)
    squares = [x for x in P.facets if len(P.neighbors(x)) == 4]
    if len(hexes) != 3 or len(squares) != 6:
        return None
    comp1 = sorted([squares[0]] + [s for s in squares[1:] if P.adjacent(squares[0], s)])
    comp2 = sorted(s for s in squares if s not in comp1)
    if len(comp1) != 3 or len(comp2) != 3:
        return None
    halves = []
    for comp in (comp1, comp2):
        half = {}
        for s in comp:
            opposite = [h for h in hexes if not P.adjacent(s, h)]
            if len(opposite) != 1:
                return None
            half[opposite[0]] = s
        halves.append(half)
    return hexes, halves[0], halves[1]


def _prism_seed(P, offset_cap=0.55, offset_side=0.5):
    a, b, ring = _prism_structure(P)
    m = len(ring)
    rows = {a: _klein_plane([0.0, 0.0, 1.0], offset_cap),
            b: _klein_plane([0.0, 0.0, -1.0], offset_cap)}
    for i, s in enumerate(ring):
        th = 2.0 * math.pi * i / m
        rows[s] = _klein_plane([math.cos(th), math.sin(th), 0.0], offset_side)
    return np.array([rows[x] for x in P.facets])


def _loebell_seed(P, offset=0.78, tilt=0.5):
    """Barrel seed: two caps and two interlocking tilted rings."""
    top, bottom, upper, lower = _loebell_structure(P)
    m = len(upper)
    s = math.sqrt(1.0 + tilt * tilt)
    rows = {top: _klein_plane([0.0, 0.0, 1.0], offset),
            bottom: _klein_plane([0.0, 0.0, -1.0], offset)}
    for i in range(m):
        th = 2.0 * math.pi * i / m
        rows[upper[i]] = _klein_plane(
            [math.cos(th) / s, math.sin(th) / s, tilt / s], offset)
        th = 2.0 * math.pi * i / m - math.pi / m
        rows[lower[i]] = _klein_plane(
            [math.cos(th) / s, math.sin(th) / s, -tilt / s], offset)
    return np.array([rows[x] for x in P.facets])


def _doubled_cube_seed(P, offset=0.52, cut=2.35):
    """A corner-truncated Euclidean cube reflected across the cut plane.

    Hexagon seeds are the symmetrized images of the three cube faces at the
    truncated corner; square seeds come from the three opposite faces and
    their mirror images.
    """
    hexes, half1, half2 = _doubled_cube_structure(P)
    c = offset
    e3 = np.eye(3)
    q = cut * c / math.sqrt(3.0)
    nu_t = _klein_plane(np.ones(3) / math.sqrt(3.0), q)
    J = LorentzForm(4).matrix
    R = np.eye(4) - 2.0 * np.outer(nu_t, J @ nu_t)
    rows = {}
    for k, h in enumerate(hexes):
        nu = _klein_plane(e3[k], c)
        v = nu + R @ nu
        rows[h] = v / math.sqrt(LorentzForm(4).inner(v, v))
        rows[half1[h]] = _klein_plane(-e3[k], c)
        rows[half2[h]] = R @ _klein_plane(-e3[k], c)
    return np.array([rows[x] for x in P.facets])


def initial_guess(Q, name=None):
    """Documented seed for Gauss-Newton, chosen by ``name`` or inferred from
    the base polytope's combinatorial structure.  Available: 'simplex'
    (exact), 'prism' / 'cube', 'doubled_cube', 'loebell' (any m, including
    the dodecahedron L(5))."""
    P = Q.base
    if name is None:
        if P.f == P.n + 1 and P.e == P.f * (P.f - 1) // 2:
            name = "simplex"
        elif P.n == 3 and _doubled_cube_structure(P):
            name = "doubled_cube"
        elif P.n == 3 and _prism_structure(P):
            name = "prism"
        elif P.n == 3 and _loebell_structure(P):
            name = "loebell"
        else:
            raise RealizationError("no bundled seed for this polytope; pass initial=")
    if name == "simplex":
        return realize_simplex(Q).normals
    if name in ("prism", "cube"):
        if _prism_structure(P) is None:
            raise RealizationError("polytope does not have prism combinatorics")
        return _prism_seed(P)
    if name == "doubled_cube":
        if _doubled_cube_structure(P) is None:
            raise RealizationError("polytope does not have doubled-cube combinatorics")
        return _doubled_cube_seed(P)
    if name == "loebell":
        if _loebell_structure(P) is None:
            raise RealizationError("polytope does not have two-ring combinatorics")
        return _loebell_seed(P)
    raise RealizationError(f"unknown seed name {name!r}")
