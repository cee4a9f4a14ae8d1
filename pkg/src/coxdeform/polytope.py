"""Combinatorics of simple polytopes: facets, ridges, vertices, dual-graph
circuits, the invariant delta_P, and truncation-polytope recognition.

Facets are labelled by integers 1..f.  A ridge is an unordered pair of
adjacent facets, stored as a sorted tuple ``(i, j)`` with ``i < j``.  A vertex
of a simple n-polytope is the set of the n facets through it, stored as a
frozenset.  For n = 3 the 1-skeleton (vertices joined by ridges) must be a
simple, planar, 3-connected cubic graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import networkx as nx


class CombinatoricsError(ValueError):
    """Raised when input data does not describe a valid simple polytope."""


def _pair(i, j):
    return (i, j) if i < j else (j, i)


class PolytopeCombinatorics:
    """Validated facet/ridge/vertex data of a simple n-polytope.

    Treat instances as immutable after construction; all derived structures
    are precomputed.  Use :func:`build_combinatorics` or one of the built-in
    generators rather than calling the constructor with unchecked data.
    """

    def __init__(self, n, facets, ridges, vertices=None, names=None, validate=True):
        self.n = int(n)
        self.facets = tuple(facets)
        self.ridges = frozenset(_pair(i, j) for i, j in ridges)
        self.names = dict(names) if names else {i: str(i) for i in self.facets}
        if vertices is not None:
            self.vertices = tuple(frozenset(v) for v in vertices)
        elif self.n == 3:
            self.vertices = _vertices_from_planar_dual(self.facets, self.ridges)
        else:
            self.vertices = None
        if validate:
            self._validate()
        self._ridge_vertices = None
        if self.vertices is not None:
            self._ridge_vertices = {r: tuple(k for k, V in enumerate(self.vertices)
                                             if r[0] in V and r[1] in V)
                                    for r in self.ridges}

    # -- basic counts -------------------------------------------------------

    @property
    def f(self):
        return len(self.facets)

    @property
    def e(self):
        return len(self.ridges)

    @property
    def v(self):
        return len(self.vertices) if self.vertices is not None else None

    def adjacent(self, i, j):
        return _pair(i, j) in self.ridges

    def neighbors(self, i):
        return sorted(j for j in self.facets if j != i and self.adjacent(i, j))

    def ridge_endpoints(self, ridge):
        """Indices (into .vertices) of the vertices on a ridge. Two for n=3."""
        return self._ridge_vertices[_pair(*ridge)]

    def dual_graph(self):
        """The dual 1-skeleton: nodes are facets, arcs are ridges."""
        G = nx.Graph()
        G.add_nodes_from(self.facets)
        G.add_edges_from(self.ridges)
        return G

    def skeleton(self):
        """The polytope 1-skeleton as a graph on vertex indices (n=3 only)."""
        if self.n != 3:
            raise CombinatoricsError("1-skeleton is only built for n=3")
        G = nx.Graph()
        G.add_nodes_from(range(len(self.vertices)))
        for r in self.ridges:
            a, b = self.ridge_endpoints(r)
            G.add_edge(a, b, ridge=r)
        return G

    def face_boundary(self, facet):
        """Ridges of one facet of a 3-polytope, in cyclic order."""
        if self.n != 3:
            raise CombinatoricsError("face cycles are only defined for n=3")
        incident = [r for r in self.ridges if facet in r]
        if not incident:
            raise CombinatoricsError(f"facet {facet} has no ridges")
        by_vertex = {}
        for r in incident:
            for k in self.ridge_endpoints(r):
                by_vertex.setdefault(k, []).append(r)
        cycle = [incident[0]]
        prev_vertex = self.ridge_endpoints(incident[0])[0]
        while len(cycle) < len(incident):
            cur = cycle[-1]
            a, b = self.ridge_endpoints(cur)
            nxt_vertex = b if a == prev_vertex else a
            step = [r for r in by_vertex[nxt_vertex] if r != cur]
            if len(step) != 1:
                raise CombinatoricsError(f"facet {facet} boundary is not a cycle")
            cycle.append(step[0])
            prev_vertex = nxt_vertex
        return cycle

    # -- validation ---------------------------------------------------------

    def _validate(self):
        if self.n < 3:
            raise CombinatoricsError("dimension must be >= 3")
        if len(set(self.facets)) != len(self.facets):
            raise CombinatoricsError("duplicate facet ids")
        fset = set(self.facets)
        for i, j in self.ridges:
            if i == j or i not in fset or j not in fset:
                raise CombinatoricsError(f"ridge ({i},{j}) has dangling or equal ids")
        if self.vertices is not None:
            for V in self.vertices:
                if len(V) != self.n:
                    raise CombinatoricsError(
                        f"vertex {sorted(V)} has {len(V)} facets, expected {self.n} (non-simple)")
                if not V <= fset:
                    raise CombinatoricsError(f"vertex {sorted(V)} has dangling facet ids")
                for i, j in itertools.combinations(sorted(V), 2):
                    if not self.adjacent(i, j):
                        raise CombinatoricsError(
                            f"facets {i},{j} share vertex {sorted(V)} but are not a ridge")
            if len(set(self.vertices)) != len(self.vertices):
                raise CombinatoricsError("duplicate vertices")
        if self.n == 3:
            self._validate_skeleton_3d()

    def _validate_skeleton_3d(self):
        # Conditions (E1)-(E2): simple, planar, 3-connected, cubic.
        v, e, f = len(self.vertices), len(self.ridges), len(self.facets)
        if v - e + f != 2:
            raise CombinatoricsError(f"Euler relation fails: v-e+f = {v - e + f}")
        if 2 * e != 3 * v:
            raise CombinatoricsError("skeleton is not cubic (2e != 3v)")
        endpoint_pairs = set()
        for r in self.ridges:
            ends = tuple(k for k, V in enumerate(self.vertices) if r[0] in V and r[1] in V)
            if len(ends) != 2:
                raise CombinatoricsError(f"ridge {r} lies on {len(ends)} vertices, expected 2")
            if ends in endpoint_pairs:
                raise CombinatoricsError(f"two ridges share endpoints {ends} (multi-edge)")
            endpoint_pairs.add(ends)
        G = nx.Graph(endpoint_pairs)
        G.add_nodes_from(range(v))
        if not nx.is_connected(G):
            raise CombinatoricsError("skeleton is disconnected")
        ok, _ = nx.check_planarity(G)
        if not ok:
            raise CombinatoricsError("skeleton is not planar")
        if not _is_three_connected(G):
            raise CombinatoricsError("skeleton is not 3-connected")


def _is_three_connected(G):
    """Exhaustive 2-vertex-cut search; fine at desk scale."""
    nodes = list(G.nodes)
    if len(nodes) < 4:
        return False
    adj = {u: set(G.neighbors(u)) for u in nodes}
    for cut in itertools.combinations(nodes, 2):
        seen = set(cut)
        start = next(u for u in nodes if u not in seen)
        stack = [start]
        seen.add(start)
        while stack:
            for v in adj[stack.pop()]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) < len(nodes):
            return False
    return True


def _vertices_from_planar_dual(facets, ridges):
    """Reconstruct vertex sets of a simple 3-polytope from facet adjacency.

    A 3-connected planar graph has an essentially unique embedding
    (Whitney), and for a simple polytope the facet-adjacency graph is a
    planar triangulation whose faces are the polytope vertices.
    """
    G = nx.Graph(ridges)
    G.add_nodes_from(facets)
    if not nx.is_connected(G):
        raise CombinatoricsError("facet adjacency graph is disconnected")
    ok, emb = nx.check_planarity(G)
    if not ok:
        raise CombinatoricsError("facet adjacency graph is not planar")
    faces = set()
    for u, v in emb.edges:
        face = emb.traverse_face(u, v)
        if len(face) != 3:
            raise CombinatoricsError(
                "facet adjacency graph is not a triangulation (polytope not simple?)")
        faces.add(frozenset(face))
    return tuple(sorted(faces, key=sorted))


def build_combinatorics(raw):
    """Build a validated :class:`PolytopeCombinatorics` from a plain mapping.

    ``raw`` has keys ``n``, ``facets`` (list of ids or names), ``ridges``
    (list of pairs) and optionally ``vertices`` (list of facet lists).
    String facet names are mapped to ids 1..f in listed order.
    """
    try:
        n = int(raw["n"])
        facet_entries = list(raw["facets"])
        ridge_entries = list(raw["ridges"])
    except (KeyError, TypeError) as exc:
        raise CombinatoricsError(f"malformed polytope description: {exc}") from exc
    ids = {}
    names = {}
    for k, entry in enumerate(facet_entries, start=1):
        ids[entry] = k
        names[k] = str(entry)
    if len(ids) != len(facet_entries):
        raise CombinatoricsError("duplicate facet entries")

    def facet_id(entry):
        if entry in ids:
            return ids[entry]
        raise CombinatoricsError(f"unknown facet {entry!r}")

    ridges = [(facet_id(a), facet_id(b)) for a, b in ridge_entries]
    vertices = raw.get("vertices")
    if vertices is not None:
        vertices = [frozenset(facet_id(x) for x in V) for V in vertices]
    return PolytopeCombinatorics(n, sorted(ids.values()), ridges, vertices, names)


# -- invariants and operations ----------------------------------------------

def delta_invariant(P):
    """e - n*f + n(n+1)/2; zero for simple 3-polytopes and truncation polytopes."""
    n = P.n
    return P.e - n * P.f + n * (n + 1) // 2


def prismatic_circuits(P, k):
    """All prismatic k-circuits of a simple 3-polytope, k in {3, 4}.

    A k-circuit is a k-cycle in the dual graph; it is prismatic when the k
    crossed polytope edges have pairwise distinct endpoints.  Circuits are
    returned as tuples of facet ids in a canonical cyclic order.
    """
    if k not in (3, 4):
        raise CombinatoricsError("only 3- and 4-circuits are supported")
    if P.n != 3:
        raise CombinatoricsError("prismatic circuits are defined for n=3")
    found = {}
    for cyc in _dual_cycles(P, k):
        crossed = [_pair(cyc[t], cyc[(t + 1) % k]) for t in range(k)]
        ends = [w for r in crossed for w in P.ridge_endpoints(r)]
        if len(set(ends)) == 2 * k:
            found[_canonical_cycle(cyc)] = tuple(crossed)
    return sorted(found.keys())


def _dual_cycles(P, k):
    """Every k-cycle of the dual graph, one orientation/rotation per cycle."""
    for combo in itertools.combinations(P.facets, k):
        if k == 3:
            arrangements = [combo]
        else:
            a, b, c, d = combo
            arrangements = [(a, b, c, d), (a, b, d, c), (a, c, b, d)]
        for arr in arrangements:
            if all(P.adjacent(arr[t], arr[(t + 1) % k]) for t in range(k)):
                yield arr


def _canonical_cycle(cyc):
    k = len(cyc)
    best = None
    for seq in (cyc, tuple(reversed(cyc))):
        for s in range(k):
            rot = tuple(seq[(s + t) % k] for t in range(k))
            if best is None or rot < best:
                best = rot
    return best


def truncate_vertex(P, vertex):
    """Cut one vertex: a new simplex facet appears, adjacent to the n facets
    that met there.  ``vertex`` is an index into ``P.vertices`` or a facet set.
    """
    if isinstance(vertex, int):
        if P.vertices is None or not 0 <= vertex < len(P.vertices):
            raise CombinatoricsError(f"invalid vertex index {vertex}")
        V = P.vertices[vertex]
    else:
        V = frozenset(vertex)
        if P.vertices is None or V not in P.vertices:
            raise CombinatoricsError(f"{sorted(V)} is not a vertex")
    new_id = max(P.facets) + 1
    facets = P.facets + (new_id,)
    ridges = set(P.ridges) | {_pair(i, new_id) for i in V}
    vertices = [W for W in P.vertices if W != V]
    for T in itertools.combinations(sorted(V), P.n - 1):
        vertices.append(frozenset(T) | {new_id})
    names = dict(P.names)
    names[new_id] = f"cut{new_id}"
    return PolytopeCombinatorics(P.n, facets, ridges, vertices, names)


@dataclass
class TruncationWitness:
    is_truncation: bool
    history: list = field(default_factory=list)
    method: str = "combinatorial recognition"

    def __bool__(self):
        return self.is_truncation


def is_truncation_polytope(P):
    """Decide whether P is an iterated vertex truncation of a simplex.

    For n >= 4 this is the statement delta_P = 0.  For n = 3 a backtracking
    reverse-truncation search is run; on success the witness history lists the
    facets removed, in reverse-truncation order down to the simplex.
    """
    if P.n >= 4:
        return TruncationWitness(delta_invariant(P) == 0, [], method="delta")
    return _reverse_truncation_search(P, [])


def _is_simplex(P):
    return P.f == P.n + 1 and P.e == P.f * (P.f - 1) // 2


def _reverse_truncation_search(P, history):
    if _is_simplex(P):
        return TruncationWitness(True, list(history))
    for facet in sorted(P.facets):
        nbrs = P.neighbors(facet)
        if len(nbrs) != P.n:
            continue
        restored = frozenset(nbrs)
        if not all(P.adjacent(i, j) for i, j in itertools.combinations(nbrs, 2)):
            continue
        if restored in P.vertices:
            continue
        try:
            Q = _untruncate(P, facet, restored)
        except CombinatoricsError:
            continue
        result = _reverse_truncation_search(Q, history + [facet])
        if result:
            return result
    return TruncationWitness(False, [])


def _untruncate(P, facet, restored):
    facets = tuple(i for i in P.facets if i != facet)
    ridges = {r for r in P.ridges if facet not in r}
    vertices = [V for V in P.vertices if facet not in V]
    vertices.append(restored)
    names = {i: P.names[i] for i in facets}
    return PolytopeCombinatorics(P.n, facets, ridges, vertices, names)


# -- built-in generators -----------------------------------------------------

def simplex(n):
    """The n-simplex: n+1 facets, every pair a ridge."""
    facets = range(1, n + 2)
    ridges = itertools.combinations(facets, 2)
    vertices = [frozenset(V) for V in itertools.combinations(facets, n)]
    return PolytopeCombinatorics(n, facets, ridges, vertices)


def prism(m):
    """The m-gonal prism: facets 1 (top), 2 (bottom), 3..m+2 (sides)."""
    if m < 3:
        raise CombinatoricsError("prism needs m >= 3")
    sides = [3 + i for i in range(m)]
    ridges = []
    vertices = []
    for i in range(m):
        s, t = sides[i], sides[(i + 1) % m]
        ridges += [(1, s), (2, s), (s, t)]
        vertices += [frozenset({1, s, t}), frozenset({2, s, t})]
    names = {1: "top", 2: "bottom"}
    names.update({s: f"side{i}" for i, s in enumerate(sides)})
    return PolytopeCombinatorics(3, [1, 2] + sides, ridges, vertices, names)


def cube():
    """The 3-cube (combinatorially the 4-prism)."""
    P = prism(4)
    P.names[1], P.names[2] = "top", "bottom"
    return P


def loebell(m):
    """The Loebell polytope L(m): two m-gons and 2m pentagons.

    Facets: 1 (top m-gon), 2 (bottom m-gon), 3..m+2 (upper ring U_0..U_{m-1}),
    m+3..2m+2 (lower ring W_0..W_{m-1}); U_i meets W_i and W_{i+1}.
    L(5) is the dodecahedron.
    """
    if m < 4:
        raise CombinatoricsError("loebell needs m >= 4")
    U = [3 + i for i in range(m)]
    W = [3 + m + i for i in range(m)]
    ridges = []
    vertices = []
    for i in range(m):
        j = (i + 1) % m
        ridges += [(1, U[i]), (2, W[i]), (U[i], U[j]), (W[i], W[j]),
                   (U[i], W[i]), (U[i], W[j])]
        vertices += [frozenset({1, U[i], U[j]}), frozenset({2, W[i], W[j]}),
                     frozenset({U[i], W[i], W[j]}), frozenset({U[i], U[j], W[j]})]
    names = {1: "top", 2: "bottom"}
    names.update({U[i]: f"U{i}" for i in range(m)})
    names.update({W[i]: f"W{i}" for i in range(m)})
    return PolytopeCombinatorics(3, [1, 2] + U + W, ridges, vertices, names)


def dodecahedron():
    return loebell(5)


def doubled_cube():
    """A cube truncated at one vertex and doubled across the triangle.

    Nine facets: the three hexagons 1, 2, 3 (fused pairs of pentagons, crossing
    the gluing locus) and six squares, 4-6 from one half and 7-9 from the other.
    The three hexagon/hexagon ridges form the unique prismatic 3-circuit.
    """
    # Square k+3 (resp. k+6) is the half-1 (resp. half-2) square opposite
    # hexagon k's generating cube facet; it is adjacent to the other two.
    ridges = [(1, 2), (1, 3), (2, 3)]
    vertices = []
    for base, squares in ((0, (4, 5, 6)), (0, (7, 8, 9))):
        s_ab, s_bc, s_ac = squares
        a, b, c = 1, 2, 3
        ridges += [(a, s_ab), (b, s_ab), (b, s_bc), (c, s_bc), (a, s_ac), (c, s_ac),
                   (s_ab, s_bc), (s_ab, s_ac), (s_bc, s_ac)]
        vertices += [frozenset({s_ab, s_bc, s_ac}),
                     frozenset({a, b, s_ab}), frozenset({b, c, s_bc}),
                     frozenset({a, c, s_ac}), frozenset({a, s_ab, s_ac}),
                     frozenset({b, s_ab, s_bc}), frozenset({c, s_bc, s_ac})]
    names = {1: "A", 2: "B", 3: "C", 4: "x_ab", 5: "x_bc", 6: "x_ac",
             7: "y_ab", 8: "y_bc", 9: "y_ac"}
    return PolytopeCombinatorics(3, range(1, 10), set(ridges), vertices, names)


def esselmann_polytope():
    """The product of two triangles: a simple 4-polytope with 6 facets.

    Facets 1-3 come from the edges of one triangle and 4-6 from the other;
    every pair of facets is a ridge, and the 9 vertices are the pairs
    {i,j} x {k,l}.  delta_P = 15 - 24 + 10 = 1.
    """
    facets = range(1, 7)
    ridges = itertools.combinations(facets, 2)
    vertices = []
    for i, j in itertools.combinations((1, 2, 3), 2):
        for k, l in itertools.combinations((4, 5, 6), 2):
            vertices.append(frozenset({i, j, k, l}))
    return PolytopeCombinatorics(4, facets, ridges, vertices)


BUILTIN_POLYTOPES = {
    "simplex3": lambda: simplex(3),
    "cube": cube,
    "dodecahedron": dodecahedron,
    "doubled_cube": doubled_cube,
    "esselmann": esselmann_polytope,
}
