import pytest

from dgscert.fixtures import dgs16_graph, mate9_graph, mate9_mate_graph
from dgscert.fpalg import ModPoly, char_poly_mod_p, format_poly, nullspace_basis_p
from dgscert.specinv import (
    p_main_poly,
    phi_p,
    phi_report,
    reduced_walk_matrix,
    restricted_char_poly,
)
from dgscert.zlinalg import IntMatrix, determinant, walk_matrix
from conftest import seeded_corpus


def P(p, *ascending):
    return ModPoly.make(p, ascending)


class TestPhiP:
    def test_single_vertex_is_one(self, k1):
        for p in (3, 5, 7):
            assert phi_p(k1, p).is_one()

    def test_dgs16_exact_value(self):
        assert format_poly(phi_p(dgs16_graph(), 3)) == "x^4+2x^3+2x^2+x+1"

    def test_mate9_squarefree_parts(self):
        from dgscert.fpalg import sfp

        g = mate9_graph()
        assert format_poly(sfp(phi_p(g, 3))) == "x+2"
        assert format_poly(sfp(phi_p(g, 5))) == "x^2+x+1"

    def test_invariant_under_generalized_cospectrality(self):
        g, h = mate9_graph(), mate9_mate_graph()
        for p in (3, 5, 7):
            assert phi_p(g, p) == phi_p(h, p)

    def test_rejects_p_equal_two(self, k1):
        with pytest.raises(ValueError):
            phi_p(k1, 2)


class TestPMainPoly:
    def test_single_vertex(self, k1):
        for p in (3, 5):
            assert p_main_poly(k1, p) == P(p, 0, 1)

    def test_mate9_pair_values(self):
        assert format_poly(p_main_poly(mate9_graph(), 3)) == "x^7+2x^6+2x^5+x^4+2x^3+2x^2+x"
        assert format_poly(p_main_poly(mate9_mate_graph(), 3)) == "x^8+x^7+2x^5+x^4+2x^2+2x"

    def test_annihilates_all_ones_vector(self, small_corpus):
        for g in small_corpus[:12]:
            adj = g.adjacency()
            n = g.n
            for p in (3, 5):
                f = p_main_poly(g, p)
                v = [0] * n
                power = [1] * n
                for c in f.coeffs:
                    v = [(v[i] + c * power[i]) % p for i in range(n)]
                    power = [sum(adj[i][j] * power[j] for j in range(n)) % p for i in range(n)]
                assert all(x == 0 for x in v)

    def test_minimality(self, p3):
        # degree equals rank of W mod p; no monic polynomial of lower degree
        # can annihilate e because the first rank columns are independent
        from dgscert.fpalg import rank_p

        for p in (3, 5):
            f = p_main_poly(p3, p)
            assert f.degree == rank_p(walk_matrix(p3), p)


class TestRestrictedCharPoly:
    def test_full_rank_gives_one(self, k1):
        assert restricted_char_poly(k1, 3).is_one()

    def test_dgs16_value(self):
        # degree 2 and divisible by sfp(phi) = x^2+x+2, hence equal to it
        assert restricted_char_poly(dgs16_graph(), 3) == P(3, 2, 1, 1)

    def test_mate9_divisibility_chain(self):
        from dgscert.fpalg import sfp

        g = mate9_graph()
        restricted = restricted_char_poly(g, 3)
        phi = phi_p(g, 3)
        assert restricted.degree == 2
        assert sfp(phi).divides(restricted)
        assert restricted.divides(phi)


class TestReducedWalkMatrix:
    @pytest.mark.parametrize(
        "graph_fn,p,k",
        [(dgs16_graph, 3, 2), (mate9_graph, 3, 2), (mate9_graph, 5, 2)],
    )
    def test_determinant_drops_by_p_to_k(self, graph_fn, p, k):
        g = graph_fn()
        det_w = determinant(walk_matrix(g))
        det_red = determinant(reduced_walk_matrix(g, p))
        assert abs(det_w) == p**k * abs(det_red)

    def test_rejects_prime_not_dividing_det(self):
        with pytest.raises(ValueError, match="does not divide"):
            reduced_walk_matrix(dgs16_graph(), 7)

    def test_shares_leading_columns_with_walk_matrix(self):
        g = mate9_graph()
        w = walk_matrix(g)
        red = reduced_walk_matrix(g, 3)
        for i in range(g.n):
            for j in range(g.n - 2):
                assert red.at(i, j) == w.at(i, j)


class TestPhiReport:
    def test_dgs16_summary(self):
        rep = phi_report(dgs16_graph(), 3)
        assert (rep.nullity, rep.sfp_phi.degree, rep.eq_degrees_match) == (2, 2, True)

    def test_mate9_summaries(self):
        g = mate9_graph()
        r3, r5 = phi_report(g, 3), phi_report(g, 5)
        assert (r3.nullity, r3.sfp_phi.degree, r3.eq_degrees_match) == (2, 1, False)
        assert (r5.nullity, r5.sfp_phi.degree, r5.eq_degrees_match) == (2, 2, True)

    def test_json_round_shape(self):
        d = phi_report(mate9_graph(), 5).to_json_dict()
        assert d["p"] == "5" and d["eq4_holds"] is True
        assert d["sfp_phi"] == "x^2+x+1"

    def test_theorem_invariants_on_corpus(self):
        corpus = seeded_corpus(15, 5, 11, seed=0xBEEF)
        for g in corpus:
            chi = char_poly_mod_p(IntMatrix.from_rows(g.adjacency()), 3)
            for p in (3, 5, 7):
                rep = phi_report(g, p)  # raises on any broken proven relation
                assert rep.sfp_phi.degree <= rep.nullity <= max(rep.phi.degree, 0)
                if rep.nullity == 1:
                    assert rep.sfp_phi.degree == 1
                if rep.eq_degrees_match:
                    # exact division identity for the annihilator
                    chi_p = char_poly_mod_p(IntMatrix.from_rows(g.adjacency()), p)
                    assert chi_p.exact_div(rep.sfp_phi) == rep.p_main

    def test_shifted_walk_matrices_share_nullspace(self, small_corpus):
        # the nullspace of W^T is unchanged when A is replaced by A + tJ
        for g in small_corpus[:8]:
            n = g.n
            base = None
            for t in (0, 1, 2):
                rows = [[v + t for v in row] for row in g.adjacency()]
                cols = []
                v = [1] * n
                for _ in range(n):
                    cols.append(v)
                    v = [sum(rows[i][j] * v[j] for j in range(n)) for i in range(n)]
                wt = IntMatrix.from_rows(cols)  # rows of W_t^T are the walk vectors
                for p in (3, 5):
                    basis = nullspace_basis_p(wt, p)
                    if t == 0:
                        if base is None:
                            base = {}
                        base[p] = basis
                    else:
                        assert basis == base[p]


class TestAgainstMatePair:
    def test_nullity_dichotomy_at_failing_prime(self):
        # at p = 3 the pair realizes different nullities and different
        # annihilators; at p = 5 both agree
        g, h = mate9_graph(), mate9_mate_graph()
        r3g, r3h = phi_report(g, 3), phi_report(h, 3)
        assert (r3g.nullity, r3h.nullity) == (2, 1)
        assert r3g.p_main != r3h.p_main
        r5g, r5h = phi_report(g, 5), phi_report(h, 5)
        assert (r5g.nullity, r5h.nullity) == (2, 2)
        assert r5g.p_main == r5h.p_main
