import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase, override_settings

from common.exceptions import ArgumentError
from common.serializers import render_json
from verification.options import parse_blocks, parse_pairing
from verification.serializers import VerificationReportSerializer
from verification.suites import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    SUITE_NAMES,
    VerificationContext,
    run_suite,
)


def run(*args, **kwargs):
    out = StringIO()
    call_command(*args, stdout=out, **kwargs)
    return out.getvalue()


def run_json(*args, **kwargs):
    return json.loads(run(*args, **kwargs))


class OptionParsingTests(SimpleTestCase):
    def test_blocks(self):
        self.assertEqual(parse_blocks("1,2|3,4").blocks, ((1, 2), (3, 4)))
        self.assertEqual(parse_blocks(" 2,1 | 3 ").blocks, ((1, 2), (3,)))

    def test_pairing(self):
        self.assertEqual(parse_pairing("1,3|2,4").to_json(), [[1, 3], [2, 4]])

    def test_malformed_blocks(self):
        for text in ("", "1,2|", "a|b", "1;2"):
            with self.subTest(text=text):
                with self.assertRaises(ValidationError):
                    parse_blocks(text)


class PairingsCommandTests(SimpleTestCase):
    def test_k2(self):
        self.assertEqual(
            run("pairings", "--k", "2").strip(),
            '{"k":2,"count":3,"pairings":[[[1,2],[3,4]],[[1,3],[2,4]],[[1,4],[2,3]]]}',
        )

    def test_k3_count(self):
        self.assertEqual(run_json("pairings", "--k", "3")["count"], 15)

    def test_cap_exits_with_3(self):
        with self.assertRaises(CommandError) as raised:
            run("pairings", "--k", "9")
        self.assertEqual(raised.exception.returncode, 3)

    def test_bad_k_exits_with_2(self):
        with self.assertRaises(CommandError) as raised:
            run("pairings", "--k", "0")
        self.assertEqual(raised.exception.returncode, 2)


class GramCommandTests(SimpleTestCase):
    def test_symbolic_k1(self):
        self.assertEqual(
            run("gram", "--k", "1").strip(), '{"k":1,"ordering":[[[1,2]]],"entries":[["n^1"]]}'
        )

    def test_evaluated_with_row_sum(self):
        report = run_json("gram", "--k", "2", "--n", "3", "--row-sum")
        self.assertEqual(report["n"], 3)
        self.assertEqual(report["entries"][1], ["3", "9", "3"])
        self.assertEqual(report["row_sum"], "n^2 + 2*n^1")


class MuCommandTests(SimpleTestCase):
    def test_mu(self):
        self.assertEqual(
            run_json("mu", "--k", "2", "--n", "3"),
            {"k": 2, "p_poly": "n^2 + 2*n^1", "n": 3, "mu": "1/5"},
        )

    def test_symbolic_only(self):
        self.assertEqual(run_json("mu", "--k", "3"), {"k": 3, "p_poly": "n^3 + 6*n^2 + 8*n^1"})


class ExpectationCommandTests(SimpleTestCase):
    def test_veronese(self):
        report = run_json("expectation", "--m", "4", "--n", "3")
        self.assertFalse(report["zero"])
        self.assertEqual(report["scalar"], "1/5")
        self.assertEqual(
            report["combination"],
            {"[[1,2],[3,4]]": "1/15", "[[1,3],[2,4]]": "1/15", "[[1,4],[2,3]]": "1/15"},
        )

    def test_odd_block(self):
        report = run_json("expectation", "--blocks", "1,2|3", "--n", "2", "--dense")
        self.assertTrue(report["zero"])
        self.assertEqual(report["combination"], {})
        self.assertEqual(report["dense"], [0.0] * 8)

    def test_needs_m_or_blocks(self):
        with self.assertRaises(CommandError) as raised:
            run("expectation", "--n", "2")
        self.assertEqual(raised.exception.returncode, 2)

    def test_pairing_cap_exits_with_3(self):
        with self.assertRaises(CommandError) as raised:
            run("expectation", "--m", "18", "--n", "2")
        self.assertEqual(raised.exception.returncode, 3)

    @override_settings(ORTHO_DENSE_ENTRY_CAP=10)
    def test_dense_cap(self):
        with self.assertRaises(CommandError) as raised:
            run("expectation", "--m", "4", "--n", "2", "--dense")
        self.assertEqual(raised.exception.returncode, 3)


class SftAndBasisCommandTests(SimpleTestCase):
    def test_sft_combination_map(self):
        self.assertEqual(
            run_json("sft", "--k", "2")["combination"],
            {"[[1,2],[3,4]]": "1", "[[1,4],[2,3]]": "-1"},
        )

    def test_sft_vanishes(self):
        self.assertTrue(run_json("sft", "--k", "3", "--n", "2")["vanishes"])
        self.assertFalse(run_json("sft", "--k", "2", "--n", "2")["vanishes"])

    def test_basis(self):
        report = run_json("basis", "--k", "2", "--n", "3")
        self.assertTrue(report["holds"])
        self.assertEqual(report["residual"], "0")
        self.assertEqual(report["row_sums"], ["1/15"] * 3)


class MomentCommandTests(SimpleTestCase):
    def test_exact(self):
        report = run_json("moment", "--n", "3", "--q", "1,1;1,1;1,1;1,1", "--method", "exact")
        self.assertEqual(report, {"query": [[1, 1]] * 4, "n": 3, "exact": "1/5"})

    def test_theorem3(self):
        report = run_json("moment", "--n", "2", "--q", "1,1;1,1;2,2;2,2", "--method", "theorem3")
        self.assertEqual(report["theorem3"], "1/4")

    def test_all_reports_both_values(self):
        report = run_json(
            "moment", "--n", "2", "--q", "1,1;1,1;2,2;2,2", "--samples", "20000", "--seed", "42"
        )
        self.assertEqual(report["theorem3"], "1/4")
        self.assertEqual(report["exact"], "3/8")
        self.assertEqual(report["mc"]["samples"], 20000)
        self.assertEqual(report["status"], "resolved")
        self.assertEqual(report["supported"], ["exact"])

    def test_same_seed_same_output(self):
        args = ("moment", "--n", "3", "--q", "1,1;1,1", "--method", "mc", "--samples", "5000")
        self.assertEqual(run(*args), run(*args))

    def test_malformed_query_exits_with_2(self):
        for query in ("1,1;", "1,4"):
            with self.subTest(query=query):
                with self.assertRaises(CommandError) as raised:
                    run("moment", "--n", "3", "--q", query, "--method", "exact")
                self.assertEqual(raised.exception.returncode, 2)

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "moment.json"
            args = ("moment", "--n", "2", "--q", "1,1;2,2", "--method", "exact")
            output = run(*args, "--out", str(path))
            self.assertEqual(output, "")
            self.assertEqual(json.loads(path.read_text())["exact"], "0")


class EstimateCommandTests(SimpleTestCase):
    def test_dot(self):
        report = run_json(
            "estimate", "--what", "dot", "--n", "3", "--k", "1", "--samples", "20000"
        )
        self.assertEqual(report["exact"], "1/3")
        self.assertTrue(report["agrees"])

    def test_pair(self):
        report = run_json(
            "estimate",
            "--what",
            "pair",
            "--n",
            "2",
            "--p1",
            "1,2|3,4",
            "--p2",
            "1,3|2,4",
            "--samples",
            "20000",
        )
        self.assertEqual(report["exact"], "1/8")
        self.assertTrue(report["agrees"])

    def test_tensor(self):
        report = run_json(
            "estimate", "--what", "tensor", "--n", "2", "--m", "2", "--samples", "20000"
        )
        self.assertEqual(len(report["mean"]), 4)
        self.assertTrue(report["agrees"])

    def test_missing_argument(self):
        with self.assertRaises(CommandError) as raised:
            run("estimate", "--what", "dot", "--n", "3")
        self.assertEqual(raised.exception.returncode, 2)


class SuiteTests(SimpleTestCase):
    context = VerificationContext(seed=42, samples=5_000)

    def test_suite_names(self):
        self.assertEqual(
            SUITE_NAMES,
            (
                "combinat",
                "gram",
                "moments",
                "sft",
                "corollary1",
                "corollary2",
                "weingarten",
                "montecarlo",
                "all",
            ),
        )

    def test_exact_suites_pass(self):
        for name in ("combinat", "gram", "moments", "sft", "corollary1", "corollary2"):
            with self.subTest(suite=name):
                report = run_suite(name, self.context)
                self.assertTrue(report.checks)
                failed = [c for c in report.checks if c.status == FAIL]
                self.assertEqual(failed, [])
                self.assertEqual(report.counts[INCONCLUSIVE], 0)

    def test_weingarten_suite_records_arbitration(self):
        report = run_suite("weingarten", VerificationContext(seed=42, samples=20_000))
        arbitration = [c for c in report.checks if c.name.startswith("arbitration")]
        self.assertTrue(arbitration)
        for check in arbitration:
            self.assertIn(check.status, (PASS, INCONCLUSIVE))
            self.assertNotEqual(check.details["theorem3"], check.details["exact"])
        single_row = [c for c in report.checks if c.name.startswith("single row index")]
        self.assertEqual([c.status for c in single_row], [PASS] * 3)

    def test_report_is_reproducible(self):
        def render():
            report = run_suite("montecarlo", self.context)
            return render_json(VerificationReportSerializer(report).data)

        self.assertEqual(render(), render())

    def test_unknown_suite(self):
        with self.assertRaises(ArgumentError):
            run_suite("nope", self.context)


class VerifyCommandTests(SimpleTestCase):
    def test_sft_suite(self):
        report = run_json("verify", "--suite", "sft")
        self.assertTrue(report["passed"])
        self.assertEqual(report["counts"], {"pass": 6, "fail": 0, "inconclusive": 0})
        self.assertEqual(report["checks"][0]["suite"], "sft")

    def test_sample_flags_are_recorded(self):
        report = run_json("verify", "--suite", "corollary2", "--seed", "7", "--samples", "10")
        self.assertEqual((report["seed"], report["samples"], report["workers"]), (7, 10, 1))

    def test_bad_samples_exit_with_2(self):
        with self.assertRaises(CommandError) as raised:
            run("verify", "--suite", "sft", "--samples", "0")
        self.assertEqual(raised.exception.returncode, 2)
