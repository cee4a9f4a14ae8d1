"""Cartan matrices of projective reflection groups.

Covers the sign/product conditions characterizing such matrices, component
decomposition by smallest real eigenvalue (Frobenius theory), the group-type
classification, normalization under the positive diagonal action with cycle
coordinates, and realization of reflection data by rank factorization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from coxdeform import vinberg
from coxdeform.numerics import DEFAULT_RANK_POLICY, numerical_rank

ZERO_TYPE_TOL = 1e-9
ENTRY_TOL = 1e-9


class CartanError(ValueError):
    pass


def _pair(i, j):
    return (i, j) if i < j else (j, i)


class CartanMatrix:
    """An f x f matrix with 2 on the diagonal and the adjacency pattern of an
    orbifold: order-2 pairs carry zeros, higher-order ridges carry negative
    entries with fixed product, non-adjacent pairs carry entries with product
    above 4.  When no pattern is supplied it is inferred from the entries.
    """

    def __init__(self, entries, orders=None, facets=None):
        self.entries = np.asarray(entries, dtype=float)
        if self.entries.ndim != 2 or self.entries.shape[0] != self.entries.shape[1]:
            raise CartanError("Cartan matrix must be square")
        f = self.entries.shape[0]
        self.facets = tuple(facets) if facets is not None else tuple(range(1, f + 1))
        self.pos = {facet: k for k, facet in enumerate(self.facets)}
        if orders is not None:
            self.orders = {_pair(*p): int(m) for p, m in dict(orders).items()}
        else:
            self.orders = self._infer_pattern()

    @classmethod
    def from_orbifold(cls, Q, entries):
        return cls(entries, orders=Q.orders, facets=Q.base.facets)

    @classmethod
    def from_point(cls, p, Q_or_index):
        index = vinberg._as_index(Q_or_index)
        orders = {pair: 2 for pair in index.e2}
        orders.update(index.e3_orders)
        return cls(p.cartan(), orders=orders, facets=index.facets)

    @property
    def f(self):
        return len(self.facets)

    def entry(self, i, j):
        return self.entries[self.pos[i], self.pos[j]]

    def e2_pairs(self):
        return sorted(p for p, m in self.orders.items() if m == 2)

    def e3_orders(self):
        return {p: m for p, m in sorted(self.orders.items()) if m >= 3}

    def e4_pairs(self):
        known = set(self.orders)
        out = []
        for a in range(self.f):
            for b in range(a + 1, self.f):
                pair = (self.facets[a], self.facets[b])
                if pair not in known:
                    out.append(pair)
        return out

    def equation_index(self, n):
        return vinberg.EquationIndex(self.facets, n, self.e2_pairs(),
                                     self.e3_orders(), self.e4_pairs())

    def _infer_pattern(self):
        scale = max(np.abs(self.entries).max(), 1.0)
        tol = ENTRY_TOL * scale
        orders = {}
        for a in range(self.f):
            for b in range(a + 1, self.f):
                x, y = self.entries[a, b], self.entries[b, a]
                pair = (self.facets[a], self.facets[b])
                if abs(x) <= tol and abs(y) <= tol:
                    orders[pair] = 2
                else:
                    prod = x * y
                    if prod < 4.0 - tol:
                        if prod <= 0:
                            orders[pair] = 0  # nonsensical; conditions report flags it
                        else:
                            orders[pair] = max(2, round(math.pi / math.acos(math.sqrt(prod) / 2.0)))
                    # else: product >= 4 -> non-adjacent pair, no order entry
        return orders


@dataclass
class ConditionsReport:
    diagonal_violations: list = field(default_factory=list)
    sign_violations: list = field(default_factory=list)       # (L1)
    order2_violations: list = field(default_factory=list)     # zeros on E2 pairs
    product_violations: list = field(default_factory=list)    # 4cos^2(pi/m) on E3
    open_violations: list = field(default_factory=list)       # product > 4 on E4

    @property
    def passed(self):
        return not (self.diagonal_violations or self.sign_violations
                    or self.order2_violations or self.product_violations
                    or self.open_violations)


def check_vinberg_conditions(A, tol=1e-9):
    """Verify the defining conditions against A's pattern: a_ii = 2; for
    i != j, a_ij <= 0 with symmetric zero pattern; a_ij = a_ji = 0 on order-2
    pairs; a_ij a_ji = 4 cos^2(pi/n_ij) on ridges of order >= 3; and the
    strict open condition a_ij a_ji > 4 on non-adjacent pairs."""
    M = A.entries
    scale = max(np.abs(M).max(), 1.0)
    atol = tol * scale
    report = ConditionsReport()
    for k, facet in enumerate(A.facets):
        if abs(M[k, k] - 2.0) > atol:
            report.diagonal_violations.append((facet, M[k, k]))
    for a in range(A.f):
        for b in range(A.f):
            if a == b:
                continue
            if M[a, b] > atol:
                report.sign_violations.append(((A.facets[a], A.facets[b]), M[a, b]))
            if (abs(M[a, b]) <= atol) != (abs(M[b, a]) <= atol):
                report.sign_violations.append(((A.facets[a], A.facets[b]),
                                               (M[a, b], M[b, a])))
    for i, j in A.e2_pairs():
        x, y = A.entry(i, j), A.entry(j, i)
        if abs(x) > atol or abs(y) > atol:
            report.order2_violations.append(((i, j), (x, y)))
    for (i, j), m in A.e3_orders().items():
        prod = A.entry(i, j) * A.entry(j, i)
        target = 4.0 * math.cos(math.pi / m) ** 2
        if abs(prod - target) > atol:
            report.product_violations.append(((i, j), prod, target))
    for i, j in A.e4_pairs():
        prod = A.entry(i, j) * A.entry(j, i)
        if not prod > 4.0:
            report.open_violations.append(((i, j), prod))
    return report


# -- components and classification ----------------------------------------------

@dataclass
class ComponentType:
    indices: tuple                  # facet ids in the component
    classification: str             # 'positive' | 'zero' | 'negative'
    smallest_eigenvalue: float


def _nonzero_graph(M, tol):
    f = M.shape[0]
    adj = {k: [] for k in range(f)}
    for a in range(f):
        for b in range(f):
            if a != b and (abs(M[a, b]) > tol or abs(M[b, a]) > tol):
                adj[a].append(b)
    return adj


def _components(adj, f):
    seen, comps = set(), []
    for start in range(f):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def _symmetrizing_diagonal(M, adj, tol):
    """Positive d with (D M D^{-1}) symmetric on a spanning tree, or None."""
    f = M.shape[0]
    d = np.ones(f)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v in seen:
                continue
            if M[u, v] * M[v, u] <= 0:
                return None
            d[v] = d[u] * math.sqrt(M[u, v] / M[v, u])
            seen.add(v)
            stack.append(v)
    return d if len(seen) == f else None


def smallest_real_eigenvalue(M, tol=1e-12):
    """Smallest real eigenvalue of a matrix with non-positive off-diagonal
    entries (always exists by Frobenius theory).  A diagonal similarity makes
    the matrix symmetric whenever the cycle products allow it; otherwise a
    general eigensolve is used and the minimum is taken over the (guaranteed
    non-empty) real part of the spectrum."""
    M = np.asarray(M, dtype=float)
    if M.shape == (1, 1):
        return float(M[0, 0])
    scale = max(np.abs(M).max(), 1.0)
    adj = _nonzero_graph(M, ENTRY_TOL * scale)
    d = _symmetrizing_diagonal(M, adj, tol)
    if d is not None:
        S = (d[:, None] * M) / d[None, :]
        if np.abs(S - S.T).max() <= 1e-8 * scale:
            return float(np.linalg.eigvalsh((S + S.T) / 2.0)[0])
    lam = np.linalg.eigvals(M)
    real = lam[np.abs(lam.imag) <= 1e-9 * max(np.abs(lam).max(), 1.0)].real
    if len(real) == 0:
        raise CartanError("no real eigenvalue found (sign conditions violated?)")
    return float(real.min())


def decompose_components(A, zero_tol=ZERO_TYPE_TOL):
    """Connected components of the nonzero pattern, each classified by the
    sign of its smallest real eigenvalue (zero within tolerance)."""
    M = A.entries
    scale = max(np.abs(M).max(), 1.0)
    norm = np.linalg.norm(M)
    comps = _components(_nonzero_graph(M, ENTRY_TOL * scale), A.f)
    out = []
    for comp in comps:
        sub = M[np.ix_(comp, comp)]
        lam = smallest_real_eigenvalue(sub)
        if abs(lam) <= zero_tol * norm:
            cls = "zero"
        elif lam > 0:
            cls = "positive"
        else:
            cls = "negative"
        out.append(ComponentType(tuple(A.facets[k] for k in comp), cls, lam))
    return out


def classify_group(A, n, policy=DEFAULT_RANK_POLICY):
    """'elliptic' iff every component is positive; 'parabolic' iff every
    component is zero with rank n; 'negative-irreducible' iff a single
    negative component of rank n+1; anything else is 'other'."""
    comps = decompose_components(A)
    rank = numerical_rank(A.entries, policy).rank
    if all(c.classification == "positive" for c in comps):
        return "elliptic"
    if all(c.classification == "zero" for c in comps) and rank == n:
        return "parabolic"
    if len(comps) == 1 and comps[0].classification == "negative" and rank == n + 1:
        return "negative-irreducible"
    return "other"


# -- diagonal gauge normalization -------------------------------------------------

@dataclass
class NormalForm:
    matrix: CartanMatrix
    cycle_coordinates: dict          # non-tree pair -> sqrt(a_ij / a_ji)
    rescaling: np.ndarray
    tree: list                       # spanning-tree pairs (facet ids)


def diagonal_normalize(A, tol=1e-9):
    """Rescale by the positive diagonal action a_ij -> d_i a_ij / d_j so the
    matrix becomes symmetric on a spanning tree of its nonzero pattern.

    The tree is grown depth-first from the lowest facet, lowest neighbor
    first.  One free coordinate per independent cycle remains: for each
    non-tree pair (i, j) the value sqrt(a_ij / a_ji) after normalization.
    Products a_ij a_ji and directed cycle products are unchanged (checked).
    """
    M = A.entries
    f = A.f
    scale = max(np.abs(M).max(), 1.0)
    adj = _nonzero_graph(M, ENTRY_TOL * scale)
    comps = _components(adj, f)
    if len(comps) != 1:
        raise CartanError("matrix is decomposable; normalize components separately")

    d = np.ones(f)
    parent = {0: None}
    tree = []
    seen = {0}

    def dfs(u):
        for v in sorted(adj[u]):
            if v in seen:
                continue
            if M[u, v] * M[v, u] <= 0:
                raise CartanError(f"pair {u},{v} has entries of opposite sign")
            d[v] = d[u] * math.sqrt(M[u, v] / M[v, u])
            parent[v] = u
            seen.add(v)
            tree.append(_pair(A.facets[u], A.facets[v]))
            dfs(v)

    dfs(0)

    N = (d[:, None] * M) / d[None, :]
    tree_set = set(tree)
    for pair in tree:
        a, b = A.pos[pair[0]], A.pos[pair[1]]
        sym = 0.5 * (N[a, b] + N[b, a])
        N[a, b] = N[b, a] = sym

    coords = {}
    nontree = []
    for u in range(f):
        for v in range(u + 1, f):
            pair = (A.facets[u], A.facets[v])
            if v in adj[u] and pair not in tree_set:
                nontree.append((u, v))
                coords[pair] = math.sqrt(N[u, v] / N[v, u])

    # invariance checks: pair products and directed fundamental-cycle products
    for u in range(f):
        for v in range(u + 1, f):
            if v in adj[u]:
                if abs(N[u, v] * N[v, u] - M[u, v] * M[v, u]) > tol * scale * scale:
                    raise CartanError("pair product changed under normalization")
    for u, v in nontree:
        path = _tree_path(parent, u, v)
        prod_m = _cycle_product(M, path, v, u)
        prod_n = _cycle_product(N, path, v, u)
        if abs(prod_m - prod_n) > tol * max(abs(prod_m), 1.0):
            raise CartanError("directed cycle product changed under normalization")

    return NormalForm(CartanMatrix(N, orders=A.orders, facets=A.facets),
                      coords, d, tree)


def _tree_path(parent, u, v):
    anc_u = [u]
    while parent[anc_u[-1]] is not None:
        anc_u.append(parent[anc_u[-1]])
    anc_v = [v]
    while parent[anc_v[-1]] is not None:
        anc_v.append(parent[anc_v[-1]])
    set_u = {node: k for k, node in enumerate(anc_u)}
    for k, node in enumerate(anc_v):
        if node in set_u:
            return anc_u[:set_u[node] + 1] + list(reversed(anc_v[:k]))
    raise CartanError("tree path not found")


def _cycle_product(X, path, v, u):
    prod = X[v, u]
    for s, t in zip(path, path[1:]):
        prod *= X[s, t]
    return prod


# -- realization by rank factorization --------------------------------------------

def realize_point_from_cartan(A, n, policy=DEFAULT_RANK_POLICY, tol=1e-9):
    """Reflection data with the given Cartan matrix, via a rank-(n+1)
    factorization A = U W (rows of U are the covectors, columns of W the
    vectors).  Any two such factorizations differ by a change of basis, which
    is gauge.  Requires the defining conditions, rank n+1, and no zero-type
    component; the factorized point is verified entrywise and checked for
    membership in the open solution domain."""
    report = check_vinberg_conditions(A)
    if not report.passed:
        raise CartanError(f"matrix violates the defining conditions: {report}")
    comps = decompose_components(A)
    if any(c.classification == "zero" for c in comps):
        raise CartanError("zero-type component present")
    rr = numerical_rank(A.entries, policy)
    if rr.rank != n + 1:
        raise CartanError(f"rank is {rr.rank}, expected n+1 = {n + 1}")

    U, s, Vt = np.linalg.svd(A.entries)
    root = np.sqrt(s[:n + 1])
    alphas = U[:, :n + 1] * root
    bs = (root[:, None] * Vt[:n + 1]).T
    point = vinberg.VinbergPoint(alphas, bs, A.facets)

    scale = max(np.abs(A.entries).max(), 1.0)
    err = np.abs(point.cartan() - A.entries).max()
    if err > tol * scale:
        raise CartanError(f"factorization error {err:.3e} exceeds tolerance")
    index = A.equation_index(n)
    membership = check_U_membership_of(A, point, n)
    if not membership.passed:
        raise CartanError(f"factorized point fails domain membership: "
                          f"{membership.failures}")
    return point


def check_U_membership_of(A, point, n):
    return vinberg.check_U_membership(A.equation_index(n), point)
