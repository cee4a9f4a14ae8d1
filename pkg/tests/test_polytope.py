import numpy as np
import pytest

from coxdeform import polytope as pt
from conftest import enumerate_dual_cycles, prismatic_oracle


def cube_description():
    P = pt.cube()
    return {"n": 3, "facets": list(P.facets),
            "ridges": [list(r) for r in sorted(P.ridges)],
            "vertices": [sorted(V) for V in P.vertices]}


def test_simplex_counts():
    P = pt.simplex(3)
    assert (P.f, P.e, P.v) == (4, 6, 4)


def test_build_from_description():
    P = pt.build_combinatorics(cube_description())
    assert (P.f, P.e, P.v) == (6, 12, 8)


def test_named_facets():
    doc = {"n": 3, "facets": ["a", "b", "c", "d"],
           "ridges": [["a", "b"], ["a", "c"], ["a", "d"],
                      ["b", "c"], ["b", "d"], ["c", "d"]]}
    P = pt.build_combinatorics(doc)
    assert P.names[1] == "a" and P.f == 4


def test_broken_cube_rejected():
    doc = cube_description()
    doc["ridges"] = doc["ridges"][:-1]  # drop one ridge: a vertex pair loses it
    with pytest.raises(pt.CombinatoricsError):
        pt.build_combinatorics(doc)


def test_nonsimple_vertex_rejected():
    doc = cube_description()
    doc["vertices"][0] = doc["vertices"][0] + [5]
    with pytest.raises(pt.CombinatoricsError):
        pt.build_combinatorics(doc)


def test_dangling_ridge_rejected():
    with pytest.raises(pt.CombinatoricsError):
        pt.PolytopeCombinatorics(3, [1, 2, 3], [(1, 4)], [])


def test_vertices_reconstructed_for_3d():
    doc = cube_description()
    del doc["vertices"]
    P = pt.build_combinatorics(doc)
    assert set(P.vertices) == set(pt.cube().vertices)


@pytest.mark.parametrize("gen,f,e,v", [
    (pt.cube, 6, 12, 8),
    (pt.dodecahedron, 12, 30, 20),
    (lambda: pt.prism(3), 5, 9, 6),
    (lambda: pt.prism(6), 8, 18, 12),
    (lambda: pt.loebell(6), 14, 36, 24),
    (lambda: pt.loebell(8), 18, 48, 32),
    (pt.doubled_cube, 9, 21, 14),
])
def test_builtin_generators(gen, f, e, v):
    P = gen()
    assert (P.f, P.e, P.v) == (f, e, v)
    assert 2 * P.e == 3 * P.v and P.v - P.e + P.f == 2


def test_delta_invariant_values():
    assert pt.delta_invariant(pt.simplex(3)) == 0
    assert pt.delta_invariant(pt.esselmann_polytope()) == 1
    for gen in (pt.cube, pt.dodecahedron, pt.doubled_cube,
                lambda: pt.prism(5), lambda: pt.loebell(7)):
        assert pt.delta_invariant(gen()) == 0


def test_dual_graph_arc_count():
    for P in (pt.cube(), pt.loebell(5)):
        assert pt.PolytopeCombinatorics.dual_graph(P).number_of_edges() == P.e


def test_prismatic_circuit_examples():
    assert len(pt.prismatic_circuits(pt.prism(3), 3)) == 1
    assert len(pt.prismatic_circuits(pt.cube(), 4)) == 3
    assert pt.prismatic_circuits(pt.cube(), 3) == []
    for m in (5, 6, 7):
        assert pt.prismatic_circuits(pt.loebell(m), 3) == []
        assert pt.prismatic_circuits(pt.loebell(m), 4) == []
    assert pt.prismatic_circuits(pt.doubled_cube(), 3) == [(1, 2, 3)]


def test_prismatic_circuits_against_oracle():
    for gen in (pt.cube, pt.dodecahedron, pt.doubled_cube,
                lambda: pt.prism(3), lambda: pt.prism(5), lambda: pt.loebell(6)):
        P = gen()
        for k in (3, 4):
            assert set(pt.prismatic_circuits(P, k)) == prismatic_oracle(P, k)


def test_circuit_bad_k():
    with pytest.raises(pt.CombinatoricsError):
        pt.prismatic_circuits(pt.cube(), 5)


def test_dual_cycles_cover_oracle():
    P = pt.prism(4)
    for k in (3, 4):
        lib = {pt._canonical_cycle(c) for c in pt._dual_cycles(P, k)}
        assert lib == enumerate_dual_cycles(P, k)


def test_truncate_simplex_once_and_twice():
    import networkx as nx

    P = pt.truncate_vertex(pt.simplex(3), 0)
    assert (P.f, P.e) == (5, 9)
    assert nx.is_isomorphic(P.dual_graph(), pt.prism(3).dual_graph())
    P2 = pt.truncate_vertex(P, 0)
    assert (P2.f, P2.e) == (6, 12)


def test_truncate_preserves_delta():
    rng = np.random.default_rng(1)
    P = pt.simplex(3)
    for _ in range(4):
        P = pt.truncate_vertex(P, int(rng.integers(len(P.vertices))))
        assert pt.delta_invariant(P) == 0


def test_truncate_dimension_four():
    P = pt.esselmann_polytope()
    T = pt.truncate_vertex(P, 0)
    assert T.f == P.f + 1 and T.e == P.e + 4  # new simplex facet: n new ridges
    assert pt.delta_invariant(T) == pt.delta_invariant(P)


def test_truncate_bad_vertex():
    with pytest.raises(pt.CombinatoricsError):
        pt.truncate_vertex(pt.simplex(3), 99)


def test_truncation_recognition():
    assert pt.is_truncation_polytope(pt.simplex(3)).is_truncation
    assert pt.is_truncation_polytope(pt.simplex(3)).history == []
    assert not pt.is_truncation_polytope(pt.cube()).is_truncation
    witness = pt.is_truncation_polytope(pt.esselmann_polytope())
    assert not witness.is_truncation and witness.method == "delta"


def test_truncation_recognition_iterated():
    rng = np.random.default_rng(7)
    for trial in range(3):
        P = pt.simplex(3)
        for _ in range(int(rng.integers(1, 5))):
            P = pt.truncate_vertex(P, int(rng.integers(len(P.vertices))))
        witness = pt.is_truncation_polytope(P)
        assert witness.is_truncation
        assert witness.method == "combinatorial recognition"
        # replay the witness: un-truncating in the listed order ends at a simplex
        assert len(witness.history) == P.f - 4


def test_face_boundary_cycles():
    P = pt.cube()
    for facet in P.facets:
        cyc = P.face_boundary(facet)
        assert len(cyc) == 4 and all(facet in r for r in cyc)
    assert len(pt.dodecahedron().face_boundary(1)) == 5
    assert len(pt.doubled_cube().face_boundary(1)) == 6


def test_esselmann_combinatorics():
    P = pt.esselmann_polytope()
    assert (P.n, P.f, P.e, len(P.vertices)) == (4, 6, 15, 9)
    for V in P.vertices:
        assert len(V) == 4
