import random

from specalt.diagram import parse_pd, change_crossings, mirror, LinkDiagram
from specalt.seifert import (seifert_circles, seifert_matrix, signature_nullity,
                             isotope_to_braid_form)
from specalt.invariants import gl_signature
from specalt.diagram import checkerboard_negative
from specalt.linalg import symmetric_signature_nullity

# externally known signature magnitudes and determinants for classical names
CLASSICAL = {
    "3_1": (2, 3), "4_1": (0, 5), "5_1": (4, 5), "5_2": (2, 7),
    "6_1": (0, 9), "6_3": (0, 13), "7_1": (6, 7), "7_2": (2, 11),
    "7_4": (2, 15), "8_1": (0, 13), "8_15": (4, 33), "9_1": (8, 9),
    "9_2": (2, 15), "9_35": (2, 27), "hopf": (1, 2), "t2_4": (3, 4),
    "t2_6": (5, 6), "t2_8": (7, 8),
}


class TestSeifertMatrix:
    def test_trefoil(self, trefoil):
        v = seifert_matrix(trefoil)
        assert len(v) == 2
        sym = [[v[i][j] + v[j][i] for j in range(2)] for i in range(2)]
        assert symmetric_signature_nullity(sym) == (-2, 0)

    def test_figure_eight(self, figure_eight):
        v = seifert_matrix(figure_eight)
        assert len(v) == 2
        sym = [[v[i][j] + v[j][i] for j in range(2)] for i in range(2)]
        assert symmetric_signature_nullity(sym) == (0, 0)

    def test_unknot_empty(self):
        assert seifert_matrix(LinkDiagram((), (), 1)) == []

    def test_size_matches_surface_homology(self, bundled):
        for rec in bundled[:10]:
            d = parse_pd(rec.pd)
            braided = isotope_to_braid_form(d)
            s = len(seifert_circles(braided))
            v = seifert_matrix(d)
            assert len(v) == braided.n - s + 1, rec.name


class TestSignatureNullity:
    def test_classical_magnitudes(self, bundled):
        by_name = {r.name: r for r in bundled}
        for name, (abs_sigma, det) in CLASSICAL.items():
            d = parse_pd(by_name[name].pd)
            sigma, eta = signature_nullity(d)
            assert abs(sigma) == abs_sigma, name
            assert eta == 0, name

    def test_positive_diagrams_negative_signature(self, bundled):
        for rec in bundled:
            d = parse_pd(rec.pd)
            if d.n and all(s == 1 for s in d.signs):
                sigma, _ = signature_nullity(d)
                assert sigma < 0, rec.name

    def test_mirror_negates(self, trefoil):
        assert signature_nullity(mirror(trefoil)) == (2, 0)

    def test_split_additivity(self, trefoil):
        from conftest import TREFOIL_PD
        d = parse_pd(TREFOIL_PD + " X[7,10,8,11] X[9,12,10,7] X[11,8,12,9]")
        sigma, eta = signature_nullity(d)
        assert sigma == -4
        assert eta == 1  # one extra split component

    def test_unlink_nullity(self):
        assert signature_nullity(LinkDiagram((), (), 3)) == (0, 2)


class TestOracleAgreement:
    def test_all_bundled(self, bundled):
        for rec in bundled:
            d = parse_pd(rec.pd)
            sigma, eta = signature_nullity(d)
            assert gl_signature(d, checkerboard_negative(d)) == sigma, rec.name
            assert eta == 0, rec.name

    def test_on_random_mirrors(self, bundled):
        rng = random.Random(5)
        for rec in rng.sample(bundled, 8):
            d = mirror(parse_pd(rec.pd))
            sigma, eta = signature_nullity(d)
            assert gl_signature(d, checkerboard_negative(d)) == sigma, rec.name


class TestVogelRobustness:
    def test_non_alternating_inputs(self, bundled):
        """signature_nullity must survive arbitrary crossing changes."""
        rng = random.Random(11)
        for rec in rng.sample(bundled, 10):
            d = parse_pd(rec.pd)
            subset = rng.sample(range(d.n), max(1, d.n // 3))
            dc = change_crossings(d, subset)
            sigma, eta = signature_nullity(dc)
            assert isinstance(sigma, int) and eta >= 0

    def test_braid_form_is_stable(self, trefoil):
        braided = isotope_to_braid_form(trefoil)
        assert braided == isotope_to_braid_form(braided)
