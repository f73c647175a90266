# test_classify.py

import logging
import math
import unittest
from unittest import mock

import numpy as np

import foldsaddle.classify as classify
from foldsaddle.classify import (
    Theorem,
    classify_case,
    degeneracy_residuals,
    detect_sigma_graph,
    ladder,
    scan,
    slice_mu,
    sliding_trials,
    which_theorem,
)
from foldsaddle.errors import CodimensionTwo, ParameterError, StructuralMismatch
from foldsaddle.normal_forms import FamilyParams, alpha0, make_system, mu0, thresholds_L, thresholds_M
from foldsaddle.return_map import find_saddle_node

fixed_lambda = -0.5 + 11.0 * math.sqrt(6.0) / 60.0


class Test_Theorems(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    def test_which_theorem(self):
        m = mu0(0.5)
        self.assertEqual(which_theorem("inv", m, 0.5), Theorem.T1)
        self.assertEqual(which_theorem("inv", m + 0.1, 0.5), Theorem.T2)
        self.assertEqual(which_theorem("inv", m - 0.1, 0.5), Theorem.T3)
        self.assertEqual(which_theorem("vis", 0.0, 0.3), Theorem.T4)
        self.assertEqual(which_theorem("vis", 0.5, 0.3), Theorem.T5)
        self.assertEqual(which_theorem("vis", -0.5, 0.3), Theorem.T6)
        self.assertEqual(which_theorem("inv", 0.0, 0.0), Theorem.T1)

    def test_which_theorem_rejects(self):
        with self.assertRaises(ParameterError):
            which_theorem("inv", 1.0, 0.5)
        with self.assertRaises(ParameterError):
            which_theorem("xx", 0.0, 0.5)

    def test_ladder_T1(self):
        p = FamilyParams("inv", 0.0, 0.5, mu0(0.5))
        lad = ladder(p, Theorem.T1)
        self.assertEqual([b.name for b in lad.breakpoints], ["-beta", "L0", "L3", "L1", "L2", "beta"])
        self.assertEqual([b.case for b in lad.breakpoints], [8, 10, 14, 12, 16, 18])
        self.assertEqual(lad.cells, [7, 9, 11, 13, 15, 17, 19])
        self.assertEqual(lad.cycles, {13: ["Attractor", "Repeller"]})

    def test_ladder_T2_T3_swap(self):
        above = FamilyParams("inv", 0.0, 0.5, mu0(0.5) + 0.05)
        names = [b.name for b in ladder(above, Theorem.T2).breakpoints]
        self.assertLess(names.index("M1"), names.index("i1"))
        below = FamilyParams("inv", 0.0, 0.5, mu0(0.5) - 0.05)
        names = [b.name for b in ladder(below, Theorem.T3).breakpoints]
        self.assertLess(names.index("i1"), names.index("M1"))

    def test_slice_mu(self):
        self.assertAlmostEqual(slice_mu("mu0_curve", 0.5, mu_offset=0.05), mu0(0.5) + 0.05)
        self.assertEqual(slice_mu("fixed", 0.5, mu=0.5), 0.5)
        with self.assertRaises(ParameterError):
            slice_mu("fixed", 0.5)
        with self.assertRaises(ParameterError):
            slice_mu("spiral", 0.5)


class Test_ClassifyCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0
        cls.mu = mu0(0.5)

    def test_connection_case(self):
        label = classify_case(FamilyParams("inv", thresholds_L(0.5)[1], 0.5, self.mu))
        self.assertEqual(label.case_index, "12_1")
        self.assertEqual(label.label, "T1/12")
        self.assertEqual(label.descriptors.connections, ["h->j"])
        self.assertEqual(label.descriptors.tangency_coincidences, ["d=i"])
        logging.info(label.to_dict())

    def test_fold_saddle_point(self):
        self.assertEqual(classify_case(FamilyParams("vis", 0.0, 0.0, 0.0)).case_index, "5_4")
        label = classify_case(FamilyParams("inv", 0.0, 0.0, 0.0))
        self.assertEqual(label.case_index, "5_1")
        self.assertEqual(label.descriptors.behavior, "Yzero")

    def test_open_cells_T1(self):
        l0, l1, l2 = thresholds_L(0.5)
        l3 = find_saddle_node(alpha0(0.5), 0.5)
        label = classify_case(FamilyParams("inv", -0.7, 0.5, self.mu))
        self.assertEqual(label.case_index, "7_1")
        self.assertEqual(label.descriptors.pseudo_equilibria, ["SigmaAttractor"])
        label = classify_case(FamilyParams("inv", 0.5 * (l3 + l1), 0.5, self.mu))
        self.assertEqual(label.case_index, "13_1")
        self.assertEqual(label.descriptors.cycles, ["Attractor", "Repeller"])
        self.assertEqual(label.descriptors.cycle_count, 2)
        label = classify_case(FamilyParams("inv", 0.5 * (l1 + l2), 0.5, self.mu))
        self.assertEqual(label.case_index, "15_1")
        self.assertEqual(label.descriptors.cycles, [])

    def test_repelling_cycle_T2(self):
        label = classify_case(FamilyParams("inv", fixed_lambda, 0.5, 0.0))
        self.assertEqual(label.case_index, "13_2")
        self.assertEqual(label.descriptors.cycles, ["Repeller"])

    def test_visible_cells(self):
        label = classify_case(FamilyParams("vis", 0.3, 0.5, 0.0))
        self.assertEqual(label.case_index, "11_4")
        self.assertEqual(label.descriptors.pseudo_equilibria, ["SigmaAttractor"])
        cases = [classify_case(FamilyParams("vis", lam, -0.3, 0.0)).case_index for lam in (-0.5, 0.0, 0.5)]
        self.assertEqual(cases, ["1_4", "2_4", "3_4"])

    def test_codimension_two(self):
        # i1 sits within 1e-9 of M1 this close to the resonance curve
        mu = self.mu + 5e-9
        m1 = thresholds_M(mu - 1.0, 0.5)[1]
        with self.assertRaises(CodimensionTwo) as cm:
            classify_case(FamilyParams("inv", m1, 0.5, mu))
        self.assertEqual(cm.exception.joint_label, "12_2+14_2")


class Test_SigmaGraph(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    def test_loop_through_saddle(self):
        mu = mu0(0.5) + 0.2
        m1 = thresholds_M(mu - 1.0, 0.5)[1]
        graph = detect_sigma_graph(FamilyParams("inv", m1, 0.5, mu))
        self.assertEqual(graph.kind, "loop-through-saddle")
        self.assertEqual(graph.vertices["S"], (0.0, -0.5))
        np.testing.assert_allclose(graph.polyline[0], [-0.5, 0.0], atol=1e-12)
        np.testing.assert_allclose(graph.polyline[-1], [-0.5, 0.0], atol=1e-12)
        self.assertIsNone(detect_sigma_graph(FamilyParams("inv", m1 + 0.01, 0.5, mu)))

    def test_fold_fold_family(self):
        graph = detect_sigma_graph(FamilyParams("vis", 0.0, 0.5, 0.0))
        self.assertEqual(graph.kind, "fold-fold-family")
        self.assertTrue((graph.polyline[:, 1] <= 1e-12).all())
        self.assertIsNone(detect_sigma_graph(FamilyParams("vis", 0.0, -0.3, 0.0)))


class Test_BoundaryLabels(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0
        cls.mu = mu0(0.5)
        cls.l0, cls.l1, cls.l2 = thresholds_L(0.5)
        cls.l3 = find_saddle_node(alpha0(0.5), 0.5)

    def test_saddle_node_has_double_fixed_point(self):
        p = FamilyParams("inv", self.l3, 0.5, self.mu)
        label = classify_case(p)
        self.assertEqual(label.case_index, "14_1")
        self.assertTrue(label.descriptors.non_hyperbolic_cycle)
        point = next(b for b in ladder(p, Theorem.T1).breakpoints if b.name == "L3")
        residuals = degeneracy_residuals(p, point, make_system(p))
        self.assertEqual([name for name, _, _ in residuals], ["double fixed point", "multiplier 1"])
        for name, res, tol in residuals:
            self.assertLessEqual(res, tol, name)
        logging.info(f"L3 residuals {residuals}")

    def test_cells_next_to_saddle_node_are_verified(self):
        for offset, case, cycles in ((2e-5, "13_1", ["Attractor", "Repeller"]), (-2e-5, "11_1", [])):
            with mock.patch("foldsaddle.classify._verify", wraps=classify._verify) as verify:
                label = classify_case(FamilyParams("inv", self.l3 + offset, 0.5, self.mu))
            self.assertEqual(verify.call_count, 1)
            self.assertEqual(label.case_index, case)
            self.assertEqual(label.descriptors.cycles, cycles)

    def test_loop_label_has_connection(self):
        p = FamilyParams("inv", self.l1, 0.5, self.mu)
        point = next(b for b in ladder(p, Theorem.T1).breakpoints if b.name == "L1")
        residuals = degeneracy_residuals(p, point, make_system(p))
        self.assertEqual([name for name, _, _ in residuals], ["d=i", "h->j"])
        for name, res, tol in residuals:
            self.assertLessEqual(res, tol, name)

    def test_shifted_threshold_is_rejected(self):
        shifted = (self.l0, self.l1 + 1e-3, self.l2)
        with mock.patch("foldsaddle.classify.thresholds_L", return_value=shifted):
            with self.assertRaises(StructuralMismatch) as cm:
                classify_case(FamilyParams("inv", self.l1 + 1e-3, 0.5, self.mu))
        self.assertEqual(cm.exception.field, "degeneracy")
        self.assertIn("d=i", str(cm.exception))

    def test_visible_tangency_label(self):
        p = FamilyParams("vis", 0.0, 0.5, 0.0)
        self.assertEqual(classify_case(p).case_index, "10_4")
        point = next(b for b in ladder(p, Theorem.T4).breakpoints if b.name == "i1")
        [(name, res, tol)] = degeneracy_residuals(p, point, make_system(p))
        self.assertEqual(name, "d=i")
        self.assertLessEqual(res, tol)


class Test_SlidingTrials(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    def test_attractor_is_approached(self):
        trials = sliding_trials(FamilyParams("inv", -0.7, 0.5, mu0(0.5)))
        self.assertEqual(len(trials), 2)
        self.assertEqual({t.kind for t in trials}, {"SigmaAttractor"})
        self.assertEqual({t.observed for t in trials}, {"approach"})
        self.assertAlmostEqual(trials[0].x_star, -0.2072, delta=1e-3)
        logging.info([t.to_dict() for t in trials])

    def test_escaping_repeller_is_left(self):
        trials = [t for t in sliding_trials(FamilyParams("vis", -0.6, 0.5, 0.0)) if t.kind == "SigmaRepeller"]
        self.assertEqual(len(trials), 2)
        self.assertAlmostEqual(trials[0].x_star, 0.6, delta=1e-6)
        self.assertTrue(all(t.region == "Escaping" and t.observed == "leave" for t in trials))

    def test_scan_cells_agree(self):
        result = scan("vis", "fixed", (-0.9, 0.9, 5), (0.2, 0.6, 3), 0, mu=0.5)
        trials = [t for c in result.cells() if c.label is not None for t in sliding_trials(c.label.params)]
        self.assertTrue(trials)
        self.assertEqual([t.to_dict() for t in trials if not t.agrees], [])


class Test_Scan(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0
        cls.result = scan("vis", "fixed", (-0.9, 0.9, 5), (0.2, 0.6, 3), 0, mu=0.0)

    def test_grid(self):
        self.assertEqual(len(self.result.labels), 3)
        self.assertEqual(len(self.result.cells()), 15)
        self.assertEqual(self.result.failures(), [])
        self.assertEqual(len(self.result.csv_rows()), 15)
        self.assertEqual(self.result.csv_rows()[0][:3], (-0.9, 0.2, "T4"))

    def test_distinct_labels(self):
        self.assertEqual(self.result.distinct_labels(), ["7_4", "9_4", "10_4", "11_4", "13_4"])
        logging.info(self.result.distinct_labels())

    def test_out_of_range_cells(self):
        result = scan("inv", "fixed", (-0.5, 0.5, 2), (0.2, 0.3, 2), 0, mu=-3.5)
        self.assertEqual({c.status for c in result.cells()}, {"OutOfRange"})
        self.assertEqual(result.distinct_labels(), [])

    def test_boundary_lane_counts(self):
        result = scan("vis", "fixed", (-0.95, 0.95, 11), (-0.4, 0.6, 6), 0, mu=0.0, boundary_lane=True)
        labels = result.distinct_labels()
        self.assertEqual(len(labels), 13)
        self.assertEqual(labels[0], "1_4")
        self.assertEqual(labels[-1], "13_4")


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    unittest.main()
