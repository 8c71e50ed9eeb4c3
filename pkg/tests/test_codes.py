import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from eqlines import configurations as cfg
from eqlines.codes import (
    GramMatrix,
    SphericalCode,
    code_to_graph,
    degree_bounded_switch,
    factor_gram,
    gram,
    gram_from_graph,
    restrict_switch,
    switch,
    verify_equiangular,
)
from eqlines.errors import PreconditionError, ValidationError
from eqlines.graph import Graph
from eqlines.linalg import eig_sym


def icosahedron_oracle():
    # vertices (0, +-1, +-phi) and cyclic shifts; one per antipodal pair
    phi = (1 + math.sqrt(5)) / 2
    pts = []
    for s1, s2 in itertools.product((1, -1), repeat=2):
        base = (0.0, s1 * 1.0, s2 * phi)
        for k in range(3):
            pts.append(base[k:] + base[:k])
    lines = []
    for p in pts:
        p = np.array(p) / np.linalg.norm(p)
        if not any(np.allclose(p, -q) or np.allclose(p, q) for q in lines):
            lines.append(p)
    return np.array(lines)


def test_icosahedron_against_vertex_oracle(icosahedron):
    V = icosahedron_oracle()
    assert V.shape == (6, 3)
    G = np.abs(V @ V.T)[~np.eye(6, dtype=bool)]
    np.testing.assert_allclose(G, 1 / math.sqrt(5), atol=1e-12)
    check = verify_equiangular(icosahedron)
    assert check.alpha == pytest.approx(1 / math.sqrt(5), abs=1e-12)


def test_johnson_against_pair_oracle(johnson):
    # <w_A, w_B> = (|A n B| - 1/2) / (3/2) for 2-subsets of an 8-set
    pairs = list(itertools.combinations(range(8), 2))
    oracle = np.array([[(len(set(a) & set(b)) - 0.5) / 1.5 for b in pairs] for a in pairs])
    M = gram(johnson).entries
    # the construction may order or sign the vectors differently; compare multisets
    off = np.sort(np.abs(M[~np.eye(28, dtype=bool)]))
    ref = np.sort(np.abs(oracle[~np.eye(28, dtype=bool)]))
    np.testing.assert_allclose(off, ref, atol=1e-12)
    check = verify_equiangular(johnson)
    assert check.max_deviation <= 1e-12
    assert check.alpha == pytest.approx(1 / 3, abs=1e-12)


def test_sic_c2_angle(sic2):
    M = gram(sic2).entries
    f = np.abs(M) ** 2
    np.testing.assert_allclose(f[~np.eye(4, dtype=bool)], 1 / 3, atol=1e-12)
    check = verify_equiangular(sic2)
    assert check.is_equiangular
    assert check.alpha == pytest.approx(1 / math.sqrt(3), abs=1e-12)


def test_restricted_johnson_graph(johnson_restricted):
    g, alpha = code_to_graph(johnson_restricted)
    assert alpha == pytest.approx(1 / 3)
    assert g.isolated_vertices() == [0]
    rest = g.delete_vertex(0)
    assert rest.is_regular() and rest.degrees[0] == 10
    w = eig_sym(rest.adjacency.astype(float), method="lapack").eigenvalues
    np.testing.assert_allclose(w[0], 10, atol=1e-9)
    np.testing.assert_allclose(w[1:21], 1, atol=1e-9)
    np.testing.assert_allclose(w[21:], -5, atol=1e-9)


def test_restrict_icosahedron(icosahedron):
    out = restrict_switch(icosahedron, 0)
    M = gram(out).entries
    np.testing.assert_allclose(M[0, 1:], 1 / math.sqrt(5), atol=1e-12)


def test_gram_from_graph_cycle_and_petersen():
    c5 = cfg.cycle(5)
    lam2 = 2 * math.cos(2 * math.pi / 5)
    a = 1 / (2 * lam2 + 1)
    M = gram_from_graph(c5, a)
    dec = M.eig()
    assert dec.rank == 3 and M.is_psd()
    code = factor_gram(M)
    assert code.n == 5 and code.r == 3
    assert verify_equiangular(code).alpha == pytest.approx(0.4472135954999579, abs=1e-9)

    P = gram_from_graph(cfg.petersen(), 1 / 3)
    code = factor_gram(P)
    assert P.eig().rank == 5 and code.r == 5
    assert verify_equiangular(code).alpha == pytest.approx(1 / 3, abs=1e-12)


def test_degree_switch_johnson_is_identity(johnson_restricted):
    out, rep = degree_bounded_switch(johnson_restricted)
    assert rep.high_degree == [] and rep.threshold == pytest.approx(16)
    assert np.array_equal(out.vectors, johnson_restricted.vectors)
    assert rep.consistent


def hub_code(n, alpha):
    # vertex 1 joined to every vertex except the isolated pivot 0
    edges = [(1, j) for j in range(2, n)]
    return factor_gram(gram_from_graph(Graph.from_edges(n, edges), alpha))


def test_degree_switch_negates_hub():
    code = hub_code(81, 1 / 3)
    out, rep = degree_bounded_switch(code)
    assert rep.high_degree == [1]
    assert rep.hypothesis_ok and rep.consistent
    assert rep.max_degree_before == 79 and rep.max_degree_after == 1
    np.testing.assert_allclose(out.vectors[1], -code.vectors[1])
    assert rep.degree_bound == pytest.approx(20.25 + 81)


def test_degree_switch_small_n_reports_hypothesis():
    out, rep = degree_bounded_switch(hub_code(12, 1 / 3))
    assert rep.high_degree == [1]
    assert not rep.hypothesis_ok and rep.degree_bound is None
    assert "hypothesis not satisfied" in rep.notes


def test_degree_switch_requires_restricted(johnson):
    g, _ = code_to_graph(johnson)
    if g.isolated_vertices():
        pytest.skip("construction happens to be restricted")
    with pytest.raises(PreconditionError):
        degree_bounded_switch(johnson)


# --- properties -------------------------------------------------------------

@given(st.lists(st.integers(0, 27), max_size=28))
def test_switching_preserves_lines(subset):
    code = cfg.johnson28()
    out = switch(code, subset)
    np.testing.assert_allclose(np.abs(gram(out).entries), np.abs(gram(code).entries), atol=1e-14)
    np.testing.assert_allclose(switch(out, subset).vectors, code.vectors)


@given(st.integers(0, 27))
def test_restriction_isolates_pivot(pivot):
    code = cfg.johnson28()
    g, _ = code_to_graph(restrict_switch(code, pivot))
    assert pivot in g.isolated_vertices()


@given(st.integers(2, 12), st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_factor_gram_roundtrip(n, r, seed):
    code = cfg.random_code(n, r, "complex", seed)
    M = gram(code)
    back = factor_gram(M)
    np.testing.assert_allclose(gram(back).entries, M.entries, atol=1e-9)
    assert back.r == M.eig().rank


@given(st.integers(2, 10), st.integers(1, 5), st.sampled_from(["real", "complex"]), st.integers(0, 1000))
def test_code_json_roundtrip(n, r, field, seed):
    code = cfg.random_code(n, r, field, seed)
    back = SphericalCode.from_json(code.to_json())
    assert back.field == field
    np.testing.assert_array_equal(back.vectors, code.vectors)


def test_code_graph_pipeline_reproduces_gram():
    code = factor_gram(gram_from_graph(cfg.cycle(5), 1 / math.sqrt(5)))
    g, a = code_to_graph(code)
    np.testing.assert_allclose(gram_from_graph(g, a).entries, gram(code).entries, atol=1e-8)


# --- errors -----------------------------------------------------------------

def test_non_unit_vector_named():
    with pytest.raises(ValidationError, match="1"):
        SphericalCode("real", np.array([[1.0, 0.0], [0.0, 2.0]]))


def test_bad_field():
    with pytest.raises(ValidationError):
        SphericalCode("quaternion", np.eye(2))


@pytest.mark.parametrize("obj", [
    {"field": "real", "r": 2},
    {"field": "real", "r": 2, "vectors": [[1, 0], [0]]},
    {"field": "real", "r": 0, "vectors": [[1]]},
    {"field": "complex", "r": 1, "vectors": [["x"]]},
    [1, 2],
])
def test_malformed_json(obj):
    with pytest.raises(ValidationError):
        SphericalCode.from_json(obj)


def test_gram_matrix_checks():
    with pytest.raises(ValidationError):
        GramMatrix(np.array([[1.0, 0.5], [0.4, 1.0]]), "real")
    with pytest.raises(ValidationError):
        GramMatrix(np.array([[2.0, 0.5], [0.5, 1.0]]), "real")


def test_single_vector_is_rejected():
    with pytest.raises(PreconditionError):
        verify_equiangular(cfg.basis(1))


def test_graph_correspondence_needs_real_nonzero(sic2):
    with pytest.raises(PreconditionError):
        code_to_graph(sic2)
    with pytest.raises(PreconditionError):
        code_to_graph(cfg.basis(3))
    with pytest.raises(PreconditionError):
        gram_from_graph(cfg.cycle(5), 1.5)
