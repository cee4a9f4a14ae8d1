import numpy as np
import pytest

from coxdeform import bundled, cartan, lorentz, orbifold as ob, polytope as pt, vinberg


@pytest.fixture(scope="session")
def tetra_orbifold():
    return bundled.load_builtin("tetrahedron353")


@pytest.fixture(scope="session")
def tetra_realization(tetra_orbifold):
    return lorentz.realize_simplex(tetra_orbifold)


@pytest.fixture(scope="session")
def tetra_point(tetra_realization):
    return vinberg.hyperbolic_point(tetra_realization)


@pytest.fixture(scope="session")
def esselmann_orbifold():
    return bundled.load_builtin("esselmann")


@pytest.fixture(scope="session")
def esselmann_matrix(esselmann_orbifold):
    return cartan.CartanMatrix(vinberg.esselmann_base_matrix(),
                               orders=esselmann_orbifold.orders,
                               facets=esselmann_orbifold.base.facets)


@pytest.fixture(scope="session")
def esselmann_realization(esselmann_orbifold):
    return lorentz.realize_gram(esselmann_orbifold)


@pytest.fixture(scope="session")
def esselmann_point(esselmann_realization):
    return vinberg.hyperbolic_point(esselmann_realization)


@pytest.fixture(scope="session")
def doubled_cube_orbifold():
    return bundled.load_builtin("doubled_cube")


@pytest.fixture(scope="session")
def doubled_cube_realization(doubled_cube_orbifold):
    return lorentz.solve_hyperbolic_newton(doubled_cube_orbifold)


@pytest.fixture(scope="session")
def cube_orbifolds():
    return {name: bundled.load_builtin(name)
            for name in ("cube_rigid", "cube_flex", "cube_mixed")}


@pytest.fixture(scope="session")
def cube_realizations(cube_orbifolds):
    return {name: lorentz.solve_hyperbolic_newton(Q)
            for name, Q in cube_orbifolds.items()}


@pytest.fixture(scope="session")
def loebell5_orbifold():
    return bundled.load_builtin("loebell5_factor")


@pytest.fixture(scope="session")
def loebell5_realization(loebell5_orbifold):
    return lorentz.solve_hyperbolic_newton(loebell5_orbifold)


# -- independent oracles used by several test modules --------------------------

def enumerate_dual_cycles(P, k):
    """Brute-force enumeration of k-cycles in the facet adjacency graph,
    canonicalized up to rotation and reflection (independent of the library's
    circuit search)."""
    import itertools

    ridges = set(P.ridges)

    def adjacent(i, j):
        return (min(i, j), max(i, j)) in ridges

    seen = set()
    for combo in itertools.permutations(P.facets, k):
        if combo[0] != min(combo):
            continue
        if all(adjacent(combo[t], combo[(t + 1) % k]) for t in range(k)):
            canon = min(
                tuple(seq[(s + t) % k] for t in range(k))
                for seq in (combo, tuple(reversed(combo)))
                for s in range(k))
            seen.add(canon)
    return seen


def prismatic_oracle(P, k):
    """Independent prismatic test on top of the brute-force cycles."""
    out = set()
    for cyc in enumerate_dual_cycles(P, k):
        ends = []
        for t in range(k):
            i, j = sorted((cyc[t], cyc[(t + 1) % k]))
            ends.extend(w for w, V in enumerate(P.vertices) if i in V and j in V)
        if len(set(ends)) == 2 * k:
            out.add(cyc)
    return out


def enumerate_perfect_matchings(P):
    """Exhaustive matching enumeration on the 1-skeleton (oracle)."""
    edges = sorted(P.ridges)
    endpoints = {r: P.ridge_endpoints(r) for r in edges}
    nverts = len(P.vertices)

    def rec(covered, chosen):
        if len(covered) == nverts:
            yield frozenset(chosen)
            return
        v = min(set(range(nverts)) - covered)
        for r in edges:
            a, b = endpoints[r]
            if v in (a, b) and a not in covered and b not in covered:
                yield from rec(covered | {a, b}, chosen + [r])

    return set(rec(set(), []))


def brute_force_weak_order(Q):
    """Try every facet permutation (f <= 8)."""
    import itertools

    for perm in itertools.permutations(sorted(Q.base.facets)):
        if ob.check_weak_ordering(Q, perm):
            return perm
    return None


def random_parity_labels(P, rng):
    """Uniform random labeling with odd sums at every vertex: free values on
    non-tree edges, tree edges solved leaf-up."""
    import networkx as nx

    G = P.skeleton()
    T = nx.minimum_spanning_tree(G)
    labels = {}
    for a, b, data in G.edges(data=True):
        if not T.has_edge(a, b):
            labels[data["ridge"]] = int(rng.integers(0, 2))
    root = 0
    order = list(nx.dfs_postorder_nodes(T, root))
    ridge_of = {tuple(sorted((a, b))): G.edges[a, b]["ridge"] for a, b in G.edges}
    parent = {root: None}
    for a, b in nx.bfs_edges(T, root):
        parent[b] = a
    for v in order:
        if v == root:
            continue
        incident = [ridge_of[tuple(sorted((v, w)))] for w in G.neighbors(v)]
        pending = ridge_of[tuple(sorted((v, parent[v])))]
        s = sum(labels[r] for r in incident if r != pending)
        labels[pending] = (1 - s) % 2
    # the root's sum is forced odd by parity: v is even and each edge flips two
    return labels
