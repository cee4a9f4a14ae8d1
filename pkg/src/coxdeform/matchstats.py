"""Matching combinatorics on cubic polytope graphs and weak-orderability
statistics.

The 1-skeleton of a simple 3-polytope is a simple planar 3-connected cubic
graph; edges carry labels in {0, 1} with an odd sum at every vertex (a factor
indicator plus a cycle-space element).  The module finds factors through a
required edge, lists removable edges, runs the constructive weak-ordering
induction (delete a removable edge of a face with few 0-edges, recurse,
reinsert), builds orbifolds from factors, and counts or estimates the share
of weakly orderable orbifolds among valid ones up to an order bound.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import networkx as nx
import numpy as np

from coxdeform import orbifold as ob
from coxdeform import polytope as pt

EXACT_EDGE_LIMIT = 14
EXACT_BUDGET = 2 ** 28


class GraphConditionError(ValueError):
    pass


def _pair(i, j):
    return (i, j) if i < j else (j, i)


# -- labelings ----------------------------------------------------------------

class EdgeLabeledGraph:
    """A polytope 1-skeleton with a {0,1} edge labeling of odd vertex sums."""

    def __init__(self, base, labels):
        if base.n != 3:
            raise GraphConditionError("edge labelings live on 3-polytope skeletons")
        self.base = base
        self.labels = {_pair(i, j): int(v) for (i, j), v in dict(labels).items()}
        if set(self.labels) != set(base.ridges):
            raise GraphConditionError("labels must cover the edge set exactly")
        if any(v not in (0, 1) for v in self.labels.values()):
            raise GraphConditionError("labels must be 0 or 1")
        for V in base.vertices:
            if vertex_label_sum(base, self.labels, V) % 2 != 1:
                raise GraphConditionError(f"vertex {sorted(V)} has even label sum")


def vertex_label_sum(P, labels, vertex):
    V = sorted(vertex)
    return sum(labels[_pair(V[a], V[b])]
               for a in range(3) for b in range(a + 1, 3))


def labels_from_factor(P, factor):
    """Label factor edges 1 and the rest 0; satisfies the odd-sum condition."""
    factor = {_pair(*e) for e in factor}
    return {r: (1 if r in factor else 0) for r in P.ridges}


# -- factors (perfect matchings) -----------------------------------------------

def is_factor(P, edges):
    """Independent predicate: spanning and regular of degree 1."""
    edges = [_pair(*e) for e in edges]
    if any(e not in P.ridges for e in edges):
        return False
    covered = []
    for e in edges:
        covered.extend(P.ridge_endpoints(e))
    return sorted(covered) == list(range(len(P.vertices)))


def find_factor(P, edge):
    """A perfect matching of the skeleton containing ``edge``.

    The edge is forced by deleting its endpoints and matching the rest with a
    blossom-capable maximum-cardinality search.  Existence is guaranteed on
    3-connected cubic graphs, so a miss signals a bug or bad input.
    """
    edge = _pair(*edge)
    if edge not in P.ridges:
        raise GraphConditionError(f"{edge} is not an edge")
    G = P.skeleton()
    if G.number_of_nodes() % 2 != 0:
        raise GraphConditionError("odd vertex count")
    u, v = P.ridge_endpoints(edge)
    H = G.copy()
    H.remove_nodes_from([u, v])
    matching = nx.max_weight_matching(H, maxcardinality=True)
    if 2 * len(matching) != H.number_of_nodes():
        raise GraphConditionError(
            "no perfect matching found; input violates the preconditions")
    result = sorted([edge] + [G.edges[a, b]["ridge"] for a, b in matching])
    if not is_factor(P, result):
        raise GraphConditionError("matching verification failed")
    return result


# -- edge deletion and removability ----------------------------------------------

def edge_delete(P, edge, labels=None, keep=None):
    """Delete an edge and amalgamate the edge pairs at its endpoints.

    The two faces across ``edge`` merge into one, which keeps the id ``keep``
    (default: the smaller).  With ``labels``, the pairs amalgamated at each
    endpoint must carry equal labels; the merged edges inherit them.  Returns
    the new combinatorics (validated: a failure means the edge was not
    removable) and, if labels were given, the new labeling.
    """
    edge = _pair(*edge)
    F, G = edge
    if keep is None:
        keep = F
    if keep not in edge:
        raise GraphConditionError("keep must be one of the edge's faces")
    drop = G if keep == F else F

    u, v = P.ridge_endpoints(edge)
    if labels is not None:
        for w in (u, v):
            X = next(iter(P.vertices[w] - set(edge)))
            if labels[_pair(F, X)] != labels[_pair(G, X)]:
                raise GraphConditionError(
                    f"labels differ on the edge pair at vertex {sorted(P.vertices[w])}")

    def rename(i):
        return keep if i == drop else i

    new_ridges = []
    new_labels = {}
    for r in sorted(P.ridges):
        if r == edge:
            continue
        m = _pair(rename(r[0]), rename(r[1]))
        if m in new_labels:
            # expected for the two amalgamation pairs; any other collision is
            # a multi-edge and disqualifies the deletion
            endpoints = set(P.ridge_endpoints(r))
            if not endpoints & {u, v}:
                raise GraphConditionError("deletion creates a multi-edge")
            continue
        new_ridges.append(m)
        new_labels[m] = labels[r] if labels is not None else 0
    new_vertices = []
    for k, V in enumerate(P.vertices):
        if k in (u, v):
            continue
        W = frozenset(rename(i) for i in V)
        if len(W) != 3 or W in new_vertices:
            raise GraphConditionError("deletion degenerates a vertex")
        new_vertices.append(W)
    names = {i: P.names[i] for i in P.facets if i != drop}
    try:
        Q = pt.PolytopeCombinatorics(3, [i for i in P.facets if i != drop],
                                     new_ridges, new_vertices, names)
    except pt.CombinatoricsError as exc:
        raise GraphConditionError(f"edge not removable: {exc}") from exc
    if labels is None:
        return Q
    if all(vertex_label_sum(P, labels, V) % 2 == 1 for V in P.vertices):
        # deletion preserves the odd-sum condition; a failure here is a bug
        assert all(vertex_label_sum(Q, new_labels, V) % 2 == 1
                   for V in Q.vertices)
    return Q, new_labels


def removable_edges(P, face):
    """Edges of a face whose deletion keeps the graph simple, planar and
    3-connected.  Guaranteed to find at least two on any face once the graph
    has more than 6 edges; asserted."""
    if P.e <= 6:
        raise GraphConditionError("graph too small (need more than 6 edges)")
    out = []
    for r in P.face_boundary(face):
        try:
            edge_delete(P, r)
        except GraphConditionError:
            continue
        out.append(r)
    assert len(out) >= 2, f"face {face} has fewer than two removable edges"
    return out


# -- constructive weak ordering ---------------------------------------------------

def validate_face_order(P, labels, ordering):
    """Every face has at most three 0-edges shared with higher-indexed faces."""
    pos = {facet: k for k, facet in enumerate(ordering)}
    if sorted(ordering) != sorted(P.facets):
        return False
    for i in P.facets:
        later = [j for j in P.facets if j != i and P.adjacent(i, j)
                 and labels[_pair(i, j)] == 0 and pos[j] > pos[i]]
        if len(later) > 3:
            return False
    return True


def construct_weak_order(P, labels):
    """Face ordering with at most three 0-edges into later faces, built by
    the deletion induction.

    Pick a face F with at most three 0-edges and a removable edge e on its
    boundary; if e is labeled 0, flip every label on F's boundary (vertex
    sums stay odd) so the pairs at e's endpoints agree; delete e, order the
    smaller graph recursively, then put F first.  The result is validated
    independently before returning.

    On four faces any ordering works (each face has only three edges), so the
    odd-sum condition is not required there.
    """
    if P.f == 4:
        work = {_pair(i, j): int(v) for (i, j), v in dict(labels).items()}
        if set(work) != set(P.ridges):
            raise GraphConditionError("labels must cover the edge set exactly")
    else:
        work = dict(EdgeLabeledGraph(P, labels).labels)
    ordering = _weak_order_rec(P, work)
    if not validate_face_order(P, labels, ordering):
        raise GraphConditionError("constructed ordering failed validation")
    return ordering


def _zero_count(P, labels, face):
    return sum(1 for r in P.ridges if face in r and labels[r] == 0)


def _weak_order_rec(P, labels):
    if P.f == 4:
        return tuple(sorted(P.facets))
    for F in (i for i in sorted(P.facets) if _zero_count(P, labels, i) <= 3):
        # the first removable boundary edge suffices; removability is the
        # edge_delete validation itself
        for e in P.face_boundary(F):
            work = dict(labels)
            if work[e] == 0:
                for r in P.face_boundary(F):
                    work[r] = 1 - work[r]
            try:
                Q, sub_labels = edge_delete(P, e, work,
                                            keep=(e[1] if e[0] == F else e[0]))
            except GraphConditionError:
                continue
            rest = _weak_order_rec(Q, sub_labels)
            return (F,) + rest
    raise GraphConditionError("no face with at most three 0-edges had a usable edge")


# -- orbifolds from factors --------------------------------------------------------

def orbifold_from_factor(P, factor, k):
    """Orders 2 off the matching and k >= 3 on it.

    Requires no prismatic 3-circuit and at most one prismatic 4-circuit; when
    one exists the factor must cross it.  The result passes the Andreev-type
    necessary conditions by construction (verified)."""
    if k < 3:
        raise GraphConditionError("matching order must be >= 3")
    factor = [_pair(*e) for e in factor]
    if not is_factor(P, factor):
        raise GraphConditionError("not a factor of the skeleton")
    if pt.prismatic_circuits(P, 3):
        raise GraphConditionError("polytope has a prismatic 3-circuit")
    circuits4 = pt.prismatic_circuits(P, 4)
    if len(circuits4) > 1:
        raise GraphConditionError("polytope has more than one prismatic 4-circuit")
    if circuits4:
        crossed = {_pair(circuits4[0][t], circuits4[0][(t + 1) % 4]) for t in range(4)}
        if not crossed & set(factor):
            raise GraphConditionError("factor misses the prismatic 4-circuit")
    orders = {r: (k if r in set(factor) else 2) for r in P.ridges}
    Q = ob.make_orbifold(P, orders)
    report = ob.andreev_necessary_check(Q)
    if not report.passed:
        raise GraphConditionError(f"Andreev-type check failed: {report}")
    return Q


# -- statistics ---------------------------------------------------------------------

@dataclass
class StatsReport:
    polytope: str
    d: int
    mode: str
    valid_count: int
    wo_count: int
    fraction: float
    ci_low: float
    ci_high: float
    nj: dict
    seed: int = None
    samples: int = None
    attempts: int = None
    acceptance_rate: float = None
    identity_checked: bool = False
    identity_holds: bool = None
    note: str = ("labeled order assignments; validity is the Andreev-type "
                 "necessary conditions of this package")


def _wilson_interval(successes, total, z=1.959963984540054):
    if total == 0:
        return 0.0, 0.0, 1.0
    phat = successes / total
    denom = 1.0 + z * z / total
    center = (phat + z * z / (2 * total)) / denom
    half = z * math.sqrt(phat * (1 - phat) / total + z * z / (4 * total * total)) / denom
    return phat, min(max(0.0, center - half), phat), max(min(1.0, center + half), phat)


def _greedy_peel(P, zero_pairs):
    zero_adj = {i: set() for i in P.facets}
    for i, j in zero_pairs:
        zero_adj[i].add(j)
        zero_adj[j].add(i)
    remaining = set(P.facets)
    while remaining:
        pick = next((i for i in sorted(remaining)
                     if len(zero_adj[i] & remaining) <= 3), None)
        if pick is None:
            return False
        remaining.remove(pick)
    return True


class _AssignmentModel:
    """Edge indexing, constraint tables and weak-orderability cache for order
    assignments on one polytope."""

    def __init__(self, P, d):
        if d < 2:
            raise GraphConditionError("order bound d must be >= 2")
        self.P = P
        self.d = d
        self.edges = sorted(P.ridges)
        self.edge_pos = {r: t for t, r in enumerate(self.edges)}
        self.vertex_triples = []
        for V in P.vertices:
            Vs = sorted(V)
            self.vertex_triples.append(tuple(
                self.edge_pos[_pair(Vs[a], Vs[b])]
                for a in range(3) for b in range(a + 1, 3)))
        self.c3 = [tuple(self.edge_pos[_pair(c[t], c[(t + 1) % 3])] for t in range(3))
                   for c in pt.prismatic_circuits(P, 3)]
        self.c4 = [tuple(self.edge_pos[_pair(c[t], c[(t + 1) % 4])] for t in range(4))
                   for c in pt.prismatic_circuits(P, 4)]
        inv = np.array([1.0 / m for m in range(2, d + 1)])
        s3 = inv[:, None, None] + inv[None, :, None] + inv[None, None, :]
        self.vertex_ok = s3 > 1.0
        self.circuit3_ok = s3 < 1.0
        self.circuit4_ok = (s3[:, :, :, None] + inv[None, None, None, :] < 2.0
                            if self.c4 else None)
        self._wo_cache = {}

    def valid_mask(self, digits):
        """Vectorized validity; ``digits`` are per-edge arrays of order - 2."""
        ok = np.ones(np.shape(digits[0]), dtype=bool)
        for t1, t2, t3 in self.vertex_triples:
            ok &= self.vertex_ok[digits[t1], digits[t2], digits[t3]]
        for t1, t2, t3 in self.c3:
            ok &= self.circuit3_ok[digits[t1], digits[t2], digits[t3]]
        for t1, t2, t3, t4 in self.c4:
            ok &= self.circuit4_ok[digits[t1], digits[t2], digits[t3], digits[t4]]
        return ok

    def circuits_ok(self, orders):
        for idxs in self.c3:
            if not sum(1.0 / orders[t] for t in idxs) < 1.0:
                return False
        for idxs in self.c4:
            if not sum(1.0 / orders[t] for t in idxs) < 2.0:
                return False
        return True

    def weakly_orderable(self, zero_mask):
        out = self._wo_cache.get(zero_mask)
        if out is None:
            zero_pairs = [self.edges[t] for t in range(len(self.edges))
                          if zero_mask >> t & 1]
            out = _greedy_peel(self.P, zero_pairs)
            self._wo_cache[zero_mask] = out
        return out

    def wo_table(self):
        """Weak orderability for every 0-edge pattern (2^e entries)."""
        e = len(self.edges)
        table = np.zeros(1 << e, dtype=bool)
        for mask in range(1 << e):
            table[mask] = self.weakly_orderable(mask)
        return table


def estimate_wo_fraction(P, d, mode="montecarlo", samples=10000, seed=0, name=None):
    """Share of weakly orderable orbifolds among valid order assignments.

    Every edge takes an order in {2..d}; validity is the package's
    Andreev-type necessary conditions (vertex ellipticity plus prismatic
    circuit inequalities).  Exact mode enumerates the full product space
    (refused beyond 14 edges or (d-1)^e > 2^28 assignments) and tabulates
    N_j(d), the number of valid assignments with exactly j edges of order
    >= 7; for d in {7, 8} it checks N_j(d) = N_j(7) * (d-6)^j against a fresh
    d = 7 enumeration.  Monte Carlo mode draws exactly uniform valid
    assignments (dynamic-programming sampler, one counter-keyed substream per
    sample) and reports a 95% Wilson interval.
    """
    name = name or f"f{P.f}-e{P.e}"
    if mode == "exact":
        return _exact_stats(P, d, name)
    if mode == "montecarlo":
        return _montecarlo_stats(P, d, samples, seed, name)
    raise GraphConditionError(f"unknown mode {mode!r}")


def _exact_counts(P, d):
    model = _AssignmentModel(P, d)
    e = len(model.edges)
    k = d - 1
    total = k ** e
    if e > EXACT_EDGE_LIMIT or total > EXACT_BUDGET:
        raise GraphConditionError(
            f"exact enumeration refused: {k}^{e} assignments exceeds the budget")
    wo_table = model.wo_table()
    valid = 0
    wo = 0
    nj = np.zeros(e + 1, dtype=np.int64)
    weights = np.array([k ** t for t in range(e)], dtype=np.int64)
    chunk = 1 << 21
    for start in range(0, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = [(ids // weights[t]) % k for t in range(e)]
        ok = model.valid_mask(digits)
        if not ok.any():
            continue
        digits = [dg[ok] for dg in digits]
        valid += int(ok.sum())
        zero_mask = np.zeros(digits[0].shape, dtype=np.int64)
        big = np.zeros(digits[0].shape, dtype=np.int64)
        for t in range(e):
            zero_mask |= (digits[t] == 0).astype(np.int64) << t
            big += digits[t] >= 5  # order >= 7
        wo += int(wo_table[zero_mask].sum())
        nj += np.bincount(big, minlength=e + 1)
    return valid, wo, nj


def _exact_stats(P, d, name):
    valid, wo, nj = _exact_counts(P, d)
    fraction = wo / valid if valid else 0.0
    report = StatsReport(polytope=name, d=d, mode="exact", valid_count=valid,
                         wo_count=wo, fraction=fraction, ci_low=fraction,
                         ci_high=fraction,
                         nj={j: int(c) for j, c in enumerate(nj) if c})
    if d in (7, 8):
        nj7 = nj if d == 7 else _exact_counts(P, 7)[2]
        report.identity_checked = True
        report.identity_holds = bool(all(
            int(nj[j]) == int(nj7[j]) * (d - 6) ** j for j in range(len(nj))))
    return report


class _UniformValidSampler:
    """Exactly uniform sampling of valid order assignments.

    Rejection from the product distribution is hopeless here (nearly every
    vertex needs an order-2 edge), so vertex-valid assignments are counted by
    a backward dynamic program over a vertex elimination order and sampled
    forward from the exact conditionals.  Orders >= 6 are interchangeable in
    every vertex inequality, so DP classes are {2, 3, 4, 5, >=6} with weight
    d - 5 on the last; a sampled >=6 class expands to a uniform order in
    {6..d}.  The few prismatic-circuit conditions are then applied by
    rejection, which preserves exact uniformity over the valid set.
    """

    def __init__(self, model):
        self.model = model
        P = model.P
        d = model.d
        self.class_orders = list(range(2, min(d, 6) + 1))  # representatives
        self.nclasses = len(self.class_orders)
        self.class_weight = [1] * self.nclasses
        if d >= 6:
            self.class_weight[-1] = d - 5
        inv = [1.0 / m for m in self.class_orders]
        self.class_ok = np.zeros((self.nclasses,) * 3, dtype=bool)
        for a in range(self.nclasses):
            for b in range(self.nclasses):
                for c in range(self.nclasses):
                    self.class_ok[a, b, c] = inv[a] + inv[b] + inv[c] > 1.0

        self.order_of_vertices = self._elimination_order(P)
        self.steps = self._plan_steps(P)
        self.counts = self._backward_counts()

    @staticmethod
    def _elimination_order(P):
        """Greedy order keeping the open-edge boundary small: always process
        the vertex with the most already-open incident edges."""
        incident = {k: set() for k in range(len(P.vertices))}
        for r in P.ridges:
            a, b = P.ridge_endpoints(r)
            incident[a].add(r)
            incident[b].add(r)
        done = []
        open_edges = set()
        remaining = set(range(len(P.vertices)))
        while remaining:
            def key(w):
                arriving = len(incident[w] & open_edges)
                return (-arriving, len(incident[w] - open_edges), w)
            w = min(remaining, key=key)
            remaining.remove(w)
            done.append(w)
            for r in incident[w]:
                if r in open_edges:
                    open_edges.remove(r)
                else:
                    open_edges.add(r)
        return done

    def _plan_steps(self, P):
        """Per vertex: arriving boundary slots, newly opened edges, and the
        boundary layout before/after."""
        incident = {k: [] for k in range(len(P.vertices))}
        for r in P.ridges:
            a, b = P.ridge_endpoints(r)
            incident[a].append(r)
            incident[b].append(r)
        steps = []
        boundary = []  # list of open edges, order = slot order
        for w in self.order_of_vertices:
            arriving = [r for r in incident[w] if r in boundary]
            new = sorted(r for r in incident[w] if r not in boundary)
            arr_slots = [boundary.index(r) for r in arriving]
            keep_slots = [s for s in range(len(boundary)) if s not in arr_slots]
            steps.append({
                "vertex": w,
                "arr_slots": arr_slots,
                "arriving": arriving,
                "new": new,
                "pre_size": len(boundary),
            })
            boundary = [boundary[s] for s in keep_slots] + new
        if boundary:
            raise GraphConditionError("elimination order left open edges")
        return steps

    def _backward_counts(self):
        """counts[t][code] = weighted number of vertex-valid completions from
        step t given the open-edge classes encoded little-endian in ``code``."""
        k = self.nclasses
        counts = [None] * (len(self.steps) + 1)
        counts[-1] = np.ones(1)
        for t in range(len(self.steps) - 1, -1, -1):
            step = self.steps[t]
            pre = step["pre_size"]
            narr = len(step["arr_slots"])
            nnew = len(step["new"])
            codes = np.arange(k ** pre, dtype=np.int64)
            arr_cls = [(codes // k ** s) % k for s in step["arr_slots"]]
            keep_slots = [s for s in range(pre) if s not in step["arr_slots"]]
            base = np.zeros(len(codes), dtype=np.int64)
            for newpos, s in enumerate(keep_slots):
                base += ((codes // k ** s) % k) * k ** newpos
            total = np.zeros(len(codes))
            nxt = counts[t + 1]
            for combo in itertools.product(range(k), repeat=nnew):
                triple = arr_cls + [np.full(len(codes), c, dtype=np.int64)
                                    for c in combo]
                ok = self.class_ok[triple[0], triple[1], triple[2]]
                w = 1
                for c in combo:
                    w *= self.class_weight[c]
                post = base.copy()
                for j, c in enumerate(combo):
                    post += c * k ** (len(keep_slots) + j)
                total += w * ok * nxt[post]
            counts[t] = total
        return counts

    @property
    def vertex_valid_count(self):
        return float(self.counts[0][0])

    def sample(self, rng, max_attempts=100000):
        """One exactly uniform valid assignment; returns (orders, attempts)."""
        model = self.model
        k = self.nclasses
        for attempt in range(1, max_attempts + 1):
            classes = {}
            code = 0
            for t, step in enumerate(self.steps):
                pre = step["pre_size"]
                arr_cls = [(code // k ** s) % k for s in step["arr_slots"]]
                keep_slots = [s for s in range(pre) if s not in step["arr_slots"]]
                base = sum(((code // k ** s) % k) * k ** j
                           for j, s in enumerate(keep_slots))
                combos = []
                weights = []
                for combo in itertools.product(range(k), repeat=len(step["new"])):
                    triple = arr_cls + list(combo)
                    if not self.class_ok[triple[0], triple[1], triple[2]]:
                        continue
                    post = base + sum(c * k ** (len(keep_slots) + j)
                                      for j, c in enumerate(combo))
                    w = self.counts[t + 1][post]
                    for c in combo:
                        w *= self.class_weight[c]
                    if w > 0:
                        combos.append((combo, post))
                        weights.append(w)
                if not combos:
                    raise GraphConditionError("sampler dead end (count bug)")
                weights = np.array(weights)
                pick = rng.choice(len(combos), p=weights / weights.sum())
                combo, code = combos[pick]
                for r, c in zip(step["new"], combo):
                    classes[r] = c
            orders = np.empty(len(model.edges), dtype=np.int64)
            for r, c in classes.items():
                o = self.class_orders[c]
                if c == self.nclasses - 1 and model.d >= 6:
                    o = int(rng.integers(6, model.d + 1))
                orders[model.edge_pos[r]] = o
            if model.circuits_ok(orders):
                return orders, attempt
        raise GraphConditionError("circuit rejection rate too high")


def _montecarlo_stats(P, d, samples, seed, name):
    model = _AssignmentModel(P, d)
    sampler = _UniformValidSampler(model)
    if sampler.vertex_valid_count == 0:
        raise GraphConditionError("no valid assignments exist")
    e = len(model.edges)
    wo = 0
    nj = {}
    attempts = 0
    for i in range(samples):
        rng = np.random.Generator(np.random.Philox(
            key=np.array([seed % 2 ** 64, i], dtype=np.uint64)))
        orders, used = sampler.sample(rng)
        attempts += used
        j = int(np.sum(orders >= 7))
        nj[j] = nj.get(j, 0) + 1
        zero_mask = 0
        for t in range(e):
            if orders[t] == 2:
                zero_mask |= 1 << t
        if model.weakly_orderable(zero_mask):
            wo += 1
    fraction, lo, hi = _wilson_interval(wo, samples)
    return StatsReport(polytope=name, d=d, mode="montecarlo", valid_count=samples,
                       wo_count=wo, fraction=fraction, ci_low=lo, ci_high=hi,
                       nj=dict(sorted(nj.items())), seed=seed, samples=samples,
                       attempts=attempts, acceptance_rate=samples / attempts)
