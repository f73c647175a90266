# test_apis.py

import contextlib
import io
import json
import logging
import os
import unittest
from unittest import mock

import foldsaddle.contracts as contracts
import foldsaddle.settings as sts
import foldsaddle.test.testhelper as helpers
from foldsaddle.__main__ import main
from foldsaddle.apis.verify import Check, count_checks, seed_checks, simulation_checks
from foldsaddle.classify import scan
from foldsaddle.errors import ParameterError
from foldsaddle.normal_forms import FamilyParams, alpha0, mu0, thresholds_L
from foldsaddle.return_map import find_canard_cycles, find_saddle_node


def run(argv: list) -> tuple:
    """main with stdout and stderr captured, returns (exit code, stdout)"""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv=argv)
    return code, out.getvalue()


class Test_Classify(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    def test_fold_saddle_point(self):
        code, out = run(["classify", "--tau", "vis", "--lambda", "0", "--beta", "0", "--mu", "0"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["case_index"], "5_4")
        self.assertEqual(doc["theorem"], "T4")
        self.assertTrue(doc["fold_saddle_point"])
        self.assertEqual(doc["geometry"]["behavior"], "Yzero")
        logging.info(doc["label"])

    def test_resonance_connection(self):
        lam = -0.5 + 6.0**0.5 / 6.0
        code, out = run(["classify", "--tau", "inv", "--lambda", str(lam), "--beta", "0.5", "--mu", str(mu0(0.5))])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["case_index"], "12_1")
        self.assertFalse(doc["fold_saddle_point"])
        self.assertAlmostEqual(doc["thresholds"]["L1"], lam, places=12)

    def test_structural_mismatch_exit_code(self):
        argv = ["classify", "--tau", "inv", "--lambda", "-0.7", "--beta", "0.5", "--mu", str(mu0(0.5))]
        with mock.patch("foldsaddle.classify.predicted_pseudo_equilibria", return_value=["SigmaSaddle"]):
            code, _ = run(argv)
        self.assertEqual(code, 2)

    def test_parameter_error_exit_code(self):
        code, _ = run(["classify", "--tau", "inv", "--lambda", "1.5", "--beta", "0.5", "--mu", "0"])
        self.assertEqual(code, 1)


class Test_Contracts(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    def assertExits(self, argv: list, code: int = 1):
        with self.assertRaises(SystemExit) as cm:
            run(argv)
        self.assertEqual(cm.exception.code, code)

    def test_usage_errors(self):
        self.assertExits(["bogus"])
        self.assertExits(["classify", "--tau", "vis"])
        self.assertExits(["classify", "--tau", "vis", "--lambda", "x", "--beta", "0", "--mu", "0"])
        self.assertExits(["classify", "--tau", "vis", "--lambda", "0", "--beta", "0", "--mu", "0", "-f", "svg"])
        self.assertExits(["scan", "--tau", "vis", "--lambda-range=0:x"])

    def test_unknown_override(self):
        self.assertExits(["info", "--tol-override", "no_such_tol=1"])
        self.assertExits(["info", "--tol-override", "pe_grid"])

    def test_override_cast(self):
        with helpers.temp_settings(pe_grid=sts.pe_grid, rtol=sts.rtol):
            applied = contracts.apply_overrides(["pe_grid=500", "rtol=1e-8"])
            self.assertEqual(applied, {"pe_grid": 500, "rtol": 1e-8})
            self.assertEqual(sts.pe_grid, 500)
        self.assertNotEqual(sts.pe_grid, 500)

    def test_parse_range(self):
        self.assertEqual(contracts.parse_range("-0.5:0.5", "lambda_range"), (-0.5, 0.5))
        self.assertEqual(contracts.parse_range("-0.5:0.5:7", "lambda_range"), (-0.5, 0.5, 7))
        self.assertEqual(contracts.parse_range([0.1, 0.2], "beta_range"), (0.1, 0.2))

    @helpers.test_setup(temp_file="run_config.json", temp_chdir="temp_file")
    def test_config_precedence(self, tempDataPath, *args, **kwargs):
        with helpers.temp_settings(pe_grid=sts.pe_grid):
            code, out = run(["classify", "--config", tempDataPath, "--lambda", "-0.3"])
            self.assertEqual(sts.pe_grid, 3000)
        self.assertEqual(code, 0)
        doc = json.loads(out)
        # --lambda beats the config file, the rest comes from it
        self.assertEqual(doc["params"], {"tau": "vis", "lambda": -0.3, "beta": 0.5, "mu": 0.0})
        self.assertEqual(doc["case_index"], "9_4")

    @helpers.test_setup(temp_file="run_config.json", temp_chdir="temp_file")
    def test_config_rejects(self, tempDataPath, *args, **kwargs):
        bad = os.path.join(os.path.dirname(tempDataPath), "bad_config.json")
        with open(bad, "w") as f:
            json.dump({"params": {"gamma": 1.0}}, f)
        self.assertExits(["classify", "--config", bad])
        self.assertExits(["scan", "--config", tempDataPath])
        self.assertExits(["classify", "--config", "missing.json"])


class Test_Outputs(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    @helpers.test_setup(temp_file=None, temp_chdir="temp_file")
    def test_portrait_is_deterministic(self, tempDataPath, *args, **kwargs):
        argv = ["portrait", "--tau", "vis", "--lambda", "0.3", "--beta", "0.5", "--mu", "0", "--seed-grid", "2"]
        texts = []
        for name in ("first.svg", "second.svg"):
            code, _ = run(argv + ["-o", name])
            self.assertEqual(code, 0)
            with open(name, "r") as f:
                texts.append(f.read())
        self.assertEqual(texts[0], texts[1])
        self.assertTrue(texts[0].startswith("<?xml"))
        self.assertIn(f"<!-- generator: {sts.generator_version} -->", texts[0])

    @helpers.test_setup(temp_file=None, temp_chdir="temp_file")
    def test_scan_files(self, tempDataPath, *args, **kwargs):
        argv = ["scan", "--tau", "vis", "-r", "3", "--lambda-range=-0.9:0.9"]
        code, _ = run(argv + ["-o", "cases.csv"])
        self.assertEqual(code, 0)
        with open("cases.csv", "r") as f:
            lines = f.read().splitlines()
        self.assertEqual(lines[0], "lambda,beta,theorem,case")
        self.assertEqual(len(lines), 1 + 9)
        code, _ = run(argv + ["-f", "svg", "-o", "cases.svg"])
        self.assertEqual(code, 0)
        with open("cases.svg", "r") as f:
            self.assertIn("</svg>", f.read())

    def test_scan_json(self):
        code, out = run(["scan", "--tau", "vis", "-r", "2", "-f", "json", "--beta-range", "0.2:0.6"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual(doc["mu_rule"], "fixed")
        self.assertEqual(doc["beta_grid"], [0.2, 0.6])

    def test_return_map_crosses_diagonal_once(self):
        lam = -0.5 + 11.0 * 6.0**0.5 / 60.0
        code, out = run(["return-map", "--lambda", str(lam), "--beta", "0.5", "--mu", "0", "-r", "40"])
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], "x,phi,dphi")
        self.assertEqual(len(lines), 41)
        gaps = [float(phi) - float(x) for x, phi, _ in (l.split(",") for l in lines[1:])]
        gaps = [g for g in gaps if g == g]
        self.assertEqual(sum(a * b < 0 for a, b in zip(gaps[:-1], gaps[1:])), 1)

    def test_demo_spring(self):
        code, out = run(["demo-spring"])
        self.assertEqual(code, 0)
        doc = json.loads(out)
        self.assertEqual([(f["owner"], f["visibility"]) for f in doc["folds"]], [("Y", "Invisible")])
        self.assertEqual(doc["params"]["variant"], "invisible")
        self.assertIn("termination", doc["trajectory"])

    def test_info(self):
        code, out = run(["info"])
        self.assertEqual(code, 0)
        self.assertIn("ACTIVE SETTINGS", out)
        self.assertIn("pe_grid", out)


class Test_Verify(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    def test_reference_checks_pass(self):
        code, out = run(["verify"])
        doc = json.loads(out)
        failed = [c["name"] for c in doc["checks"] if not c["passed"]]
        self.assertEqual(failed, [])
        self.assertEqual(code, 0)
        self.assertTrue(doc["passed"])

    def test_failure_exit_code(self):
        failing = [Check("thresholds", "planted", 0.0, 1.0, 1e-9, False)]
        with mock.patch("foldsaddle.apis.verify.run_checks", return_value=failing):
            code, out = run(["verify"])
        self.assertEqual(code, 3)
        self.assertFalse(json.loads(out)["passed"])


class Test_VerifyGroups(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.verbose = 0

    def test_case_counts(self):
        checks = count_checks()
        self.assertEqual([c.name.split()[0] for c in checks], ["T1", "T2", "T3", "T4", "T5", "T6"])
        self.assertEqual([c.actual for c in checks], [19, 21, 21, 13, 13, 13])
        self.assertTrue(all(c.passed for c in checks))
        logging.info([c.to_dict() for c in checks])

    def test_seeds_around_both_cycles(self):
        alpha = alpha0(0.5)
        lam = 0.5 * (find_saddle_node(alpha, 0.5) + thresholds_L(0.5)[1])
        p = FamilyParams.from_alpha("inv", lam, 0.5, alpha)
        checks = seed_checks(p, find_canard_cycles(p))
        self.assertEqual(len(checks), 4)
        self.assertEqual([c.expected for c in checks], [True, True, False, False])
        self.assertTrue(all(c.passed for c in checks), [c.to_dict() for c in checks])
        self.assertIn("outside cycle 0", checks[0].name)
        self.assertIn("inside cycle 1", checks[3].name)

    def test_simulation_group(self):
        checks = simulation_checks()
        self.assertEqual(len(checks), 6)
        for c in checks:
            self.assertTrue(c.passed, c.to_dict())
            self.assertGreater(c.expected, 0)

    def test_process_pool_scan(self):
        args = ("vis", "fixed", (-0.9, 0.9, 4), (0.2, 0.6, 2), 0)
        with helpers.temp_settings(scan_pool="process"):
            pooled = scan(*args, mu=0.0, workers=2)
        threaded = scan(*args, mu=0.0, workers=2)
        self.assertEqual(pooled.csv_rows(), threaded.csv_rows())
        with helpers.temp_settings(scan_pool="fiber"):
            with self.assertRaises(ParameterError):
                scan(*args, mu=0.0)


if __name__ == "__main__":
    logging.basicConfig(level=logging.INFO)
    unittest.main()
