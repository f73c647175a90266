# test_flow.py

import logging
import math
import unittest

from foldsaddle.core import (
    Owner,
    PseudoKind,
    Region,
    Visibility,
    XInv,
    YSaddle,
    direction_function,
    find_folds,
    find_pseudo_equilibria,
    sigma_regions,
)
from foldsaddle.errors import EscapingStart, ParameterError
from foldsaddle.flow import (
    Regime,
    Termination,
    advance,
    find_connection_lambda,
    integrate_free,
    poincare_iterates,
    slide,
)
from foldsaddle.normal_forms import FamilyParams, alpha0, inv_landing, make_system, thresholds_L, thresholds_M


class Test_IntegrateFree(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    def test_x_arc_lands_on_closed_form(self):
        seg = integrate_free(XInv(0.0), (-0.4, 0.0), "upper")
        self.assertEqual(seg.termination, Termination.HIT_SIGMA)
        self.assertEqual(seg.regime, Regime.FREE_X)
        self.assertAlmostEqual(seg.end[0], (3.8 - math.sqrt(2.28)) / 4.0, delta=1e-8)
        self.assertEqual(seg.end[1], 0.0)
        self.assertGreater(seg.points[:, 2].max(), 0.1)

    def test_y_arc_mirrors_at_alpha_minus_one(self):
        seg = integrate_free(YSaddle(-1.0, 0.5), (0.3, 0.0), "lower")
        self.assertEqual(seg.termination, Termination.HIT_SIGMA)
        self.assertAlmostEqual(seg.end[0], -0.3, delta=1e-8)

    def test_y_arc_escapes_past_separatrix(self):
        seg = integrate_free(YSaddle(-1.0, 0.5), (0.6, 0.0), "lower")
        self.assertEqual(seg.termination, Termination.LEFT_DOMAIN)

    def test_time_budget(self):
        seg = integrate_free(YSaddle(-1.0, 0.5), (0.3, 0.0), "lower", 0.1)
        self.assertEqual(seg.termination, Termination.TIME_BUDGET)
        self.assertAlmostEqual(seg.t_end, 0.1)

    def test_wrong_half_plane(self):
        with self.assertRaises(ParameterError):
            integrate_free(XInv(0.0), (0.0, -0.2), "upper")


class Test_Advance(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0
        cls.Z_cross = make_system(FamilyParams("inv", 0.0, 0.5, 0.0))

    def test_crossing_sequence(self):
        traj = advance(self.Z_cross, (0.4, 0.0))
        self.assertEqual(traj.event_kinds()[:3], ["crossing"] * 3)
        self.assertEqual(
            [s.regime for s in traj.segments], [Regime.FREE_Y, Regime.FREE_X, Regime.FREE_Y]
        )
        self.assertAlmostEqual(traj.segments[0].end[0], -0.4, delta=1e-8)
        self.assertEqual(traj.termination, Termination.LEFT_DOMAIN)
        logging.info(traj.to_dict()["events"])

    def test_slides_into_attractor(self):
        p = FamilyParams.from_alpha("inv", -0.7, 0.5, alpha0(0.5))
        Z = make_system(p)
        pes = find_pseudo_equilibria(Z, window=(-1.5, 0.3))
        self.assertEqual([pe.kind for pe in pes], [PseudoKind.SIGMA_ATTRACTOR])
        traj = advance(Z, (-0.4, 0.0), 50.0)
        self.assertEqual(traj.event_kinds(), ["sliding-entry"])
        self.assertEqual(traj.segments[0].regime, Regime.SLIDING)
        self.assertEqual(traj.termination, Termination.REACHED_PSEUDO_EQUILIBRIUM)
        self.assertAlmostEqual(traj.end[0], pes[0].x, delta=1e-6)

    def test_start_on_pseudo_equilibrium(self):
        Z = make_system(FamilyParams("vis", -0.6, 0.5, 0.0))
        traj = advance(Z, (0.6, 0.0))
        self.assertEqual(traj.event_kinds(), ["pseudo-equilibrium"])
        self.assertEqual(traj.termination, Termination.REACHED_PSEUDO_EQUILIBRIUM)

    def test_tangency_is_stepped_past(self):
        Z = make_system(FamilyParams("inv", 0.2, 0.5, 0.0))
        traj = advance(Z, (0.2, 0.0), 1.0)
        self.assertEqual(traj.event_kinds()[:2], ["tangency", "crossing"])

    def test_escaping_needs_directive(self):
        Z = make_system(FamilyParams("vis", -0.6, 0.5, 0.0))
        with self.assertRaises(EscapingStart):
            advance(Z, (0.3, 0.0))
        traj = advance(Z, (0.3, 0.0), 2.0, directive="go-up")
        self.assertEqual(traj.event_kinds()[0], "go-up")
        self.assertEqual(traj.segments[0].regime, Regime.FREE_X)

    def test_bad_inputs(self):
        with self.assertRaises(ParameterError):
            advance(self.Z_cross, (0.4, 0.0), directive="sideways")
        with self.assertRaises(ParameterError):
            advance(self.Z_cross, (2.0, 0.0))


class Test_Sliding(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0
        cls.Z_attr = make_system(FamilyParams.from_alpha("inv", -0.7, 0.5, alpha0(0.5)))
        # Sigma_e = (0, 1.5) with a repeller at 0.6
        cls.Z_esc = make_system(FamilyParams("vis", -0.6, 0.5, 0.0))

    def test_exit_at_visible_fold(self):
        # sliding on (-0.5, 0) ends at the visible Y fold at 0
        Z = make_system(FamilyParams("inv", -0.5, -0.3, 0.0))
        fold = next(f for f in find_folds(Z) if f.owner == Owner.Y)
        self.assertEqual(fold.visibility, Visibility.VISIBLE)
        traj = advance(Z, (-0.25, 0.0), 10.0)
        self.assertEqual(traj.event_kinds(), ["sliding-entry", "sliding-exit", "crossing"])
        sliding, free = traj.segments
        self.assertEqual(sliding.termination, Termination.REACHED_FOLD)
        self.assertAlmostEqual(sliding.end[0], fold.x, delta=1e-8)
        self.assertTrue((sliding.points[1:, 1] > sliding.points[:-1, 1]).all())
        self.assertEqual(free.regime, Regime.FREE_Y)
        self.assertTrue((free.points[1:, 2] < 0.0).all())
        self.assertEqual(traj.termination, Termination.LEFT_DOMAIN)
        logging.info(traj.to_dict()["segments"])

    def test_limits_are_roots_or_endpoints(self):
        for Z in (self.Z_attr, self.Z_esc):
            ends = [f.x for f in find_folds(Z)] + list(Z.domain[:2])
            for piece in sigma_regions(Z):
                if piece.region not in (Region.SLIDING, Region.ESCAPING):
                    continue
                for frac in (0.2, 0.5, 0.8):
                    x0 = piece.x_lo + frac * (piece.x_hi - piece.x_lo)
                    seg = slide(Z, x0, 200.0)
                    x = seg.end[0]
                    self.assertNotEqual(seg.termination, Termination.TIME_BUDGET, (Z.name, x0))
                    if seg.termination == Termination.REACHED_PSEUDO_EQUILIBRIUM:
                        self.assertLessEqual(abs(direction_function(Z, x)), 1e-9)
                    else:
                        self.assertLess(min(abs(x - e) for e in ends), 1e-8, (Z.name, x0, x))

    def test_backward_slide_reaches_escaping_repeller(self):
        for x0 in (0.5, 0.7):
            seg = slide(self.Z_esc, x0, 150.0, backward=True)
            self.assertEqual(seg.termination, Termination.REACHED_PSEUDO_EQUILIBRIUM)
            self.assertAlmostEqual(seg.end[0], 0.6, delta=1e-8)
            self.assertLess(seg.t_end, 0.0)
        seg = slide(self.Z_esc, 0.7, 150.0)
        self.assertEqual(seg.termination, Termination.LEFT_DOMAIN)
        self.assertAlmostEqual(seg.end[0], 1.5, delta=1e-8)


class Test_Returns(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    def test_poincare_iterates(self):
        Z = make_system(FamilyParams("inv", 0.0, 0.5, 0.0))
        iterates = poincare_iterates(Z, -0.2, 2)
        self.assertEqual(len(iterates), 3)
        self.assertAlmostEqual(iterates[1], -float(inv_landing(-0.2)), delta=1e-8)
        self.assertLess(iterates[2], iterates[1])

    def test_connections_match_closed_forms(self):
        for alpha in (alpha0(0.5), -1.0, -0.5):
            for pair, expected in zip(("h->i", "h->j", "i->j"), thresholds_M(alpha, 0.5)):
                self.assertAlmostEqual(find_connection_lambda("inv", alpha, 0.5, pair), expected, delta=1e-9)
        self.assertAlmostEqual(
            find_connection_lambda("inv", alpha0(0.5), 0.5, "h→j"), thresholds_L(0.5)[1], delta=1e-9
        )

    def test_connection_inputs(self):
        with self.assertRaises(ParameterError):
            find_connection_lambda("vis", -1.0, 0.5, "h->j")
        with self.assertRaises(ParameterError):
            find_connection_lambda("inv", -1.0, 0.0, "h->j")
        with self.assertRaises(ParameterError):
            find_connection_lambda("inv", -1.0, 0.5, "j->h")


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    unittest.main()
