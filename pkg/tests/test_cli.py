import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from loguru import logger

import constants
from stringnet.cli.files import parse_group_text
from stringnet.cli.main import execute
from stringnet.core.errors import LawViolation, ParseError
from tests.helpers import MockConsole, data_path


class CommandLineTestCase(unittest.TestCase):
    """
    Runs the commands end to end against the bundled data files.

    Reports go to a temporary directory so that they can be compared byte for byte.
    """

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        self.console = MockConsole()

    def tearDown(self):
        logger.remove()
        self.tmp.cleanup()

    def run_command(self, *argv, out: str = "report.json"):
        path = self.dir / out
        code = execute(["--out", str(path), *argv], console=self.console)
        report = json.loads(path.read_text(encoding="utf-8")) if path.exists() else None
        return code, report

    def test_validate_accepts_the_five_coupon_diagram(self):
        code, report = self.run_command("validate", str(data_path("five_coupons.json")))
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertEqual(report["verdict"], "accept")
        self.assertEqual(report["backend"], "vect")
        self.assertEqual(report["result"]["violations"], [])

    def test_validate_rejects_a_cup(self):
        code, report = self.run_command("validate", str(data_path("cup.json")))
        self.assertEqual(code, constants.EXIT_REJECT)
        self.assertEqual(report["verdict"], "reject")
        self.assertIn("verdict", self.console.text)

    def test_eval_reports_bands(self):
        code, report = self.run_command("eval", str(data_path("single_coupon.json")))
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertEqual(report["result"]["value"], {"dom": "(V2)", "codom": "(V1)", "matrix": [["2", "-1/3"]]})

    def test_reduce_standard_net(self):
        code, report = self.run_command("reduce", str(data_path("z2_standard.json")))
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertEqual(report["result"]["c"], "(g)")
        self.assertEqual(report["result"]["h"]["matrix"], [["3"]])

    def test_rightward_crossing_is_reduced(self):
        code, report = self.run_command("reduce", str(data_path("z2_rightward.json")))
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertEqual(report["result"]["c"], "(g)")
        self.assertEqual(report["result"]["h"]["matrix"], [["1"]])

    def test_seed_drives_random_levels(self):
        path = str(data_path("five_coupons.json"))
        _, first = self.run_command("--seed", "3", "eval", path, "--random-levels", out="first.json")
        _, again = self.run_command("--seed", "3", "eval", path, "--random-levels", out="again.json")
        self.assertEqual((self.dir / "first.json").read_bytes(), (self.dir / "again.json").read_bytes())
        chosen = {tuple(first["result"]["levels"])}
        for seed in range(4, 10):
            code, report = self.run_command("--seed", str(seed), "eval", path, "--random-levels", out=f"{seed}.json")
            self.assertEqual(code, constants.EXIT_ACCEPT)
            self.assertEqual(report["arguments"]["seed"], seed)
            self.assertEqual(report["result"]["value"], first["result"]["value"])
            chosen.add(tuple(report["result"]["levels"]))
        self.assertGreater(len(chosen), 1)

    def test_seed_from_the_environment(self):
        path = str(data_path("five_coupons.json"))
        _, given = self.run_command("--seed", "3", "eval", path, "--random-levels", "--jitter", out="given.json")
        with mock.patch.dict(os.environ, {"STRINGNET_SEED": "3"}):
            _, env = self.run_command("eval", path, "--random-levels", "--jitter", out="env.json")
        self.assertEqual(env, given)
        self.assertTrue(env["result"]["jitter_agrees"])

    def test_presheaf_round_trips(self):
        code, report = self.run_command("--backend", "vect-z2", "monad-check", "--presheaves")
        self.assertEqual(code, constants.EXIT_ACCEPT)
        checks = report["result"]["presheaves"]
        self.assertEqual(len(checks), 6)
        self.assertTrue(all(c["round_trip"] for c in checks))

    def test_bad_field_is_an_input_error(self):
        code, _ = self.run_command("--field", "GF(4)", "validate", str(data_path("five_coupons.json")))
        self.assertEqual(code, constants.EXIT_INPUT_ERROR)

    def test_compose_agrees_with_kleisli(self):
        code, report = self.run_command(
            "compose", str(data_path("z2_standard.json")), str(data_path("z2_identity.json"))
        )
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertTrue(report["result"]["agree"])
        self.assertEqual(report["result"]["value"], report["result"]["kleisli"])

    def test_monad_check_on_sweedler(self):
        code, report = self.run_command("--backend", "hopf-h4", "monad-check", "--compare", "0")
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertEqual(report["result"]["strategy"], "HopfCoend")
        self.assertFalse(report["result"]["compare"]["agree"])

    def test_law_violation_exits_with_breach(self):
        with mock.patch(
            "stringnet.monad.monad.Monad.check_laws", side_effect=LawViolation("associativity", {"object": "(g)"})
        ):
            code, report = self.run_command("--backend", "vect-z2", "monad-check")
        self.assertEqual(code, constants.EXIT_INVARIANT_BREACH)
        self.assertIsNone(report)
        self.assertIn("associativity violated", self.console.text)

    def test_center_counts_simples(self):
        code, report = self.run_command("--backend", "vect-z2", "center")
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertEqual(report["result"]["simples"], 4)
        self.assertEqual(report["result"]["radical_dimension"], 0)
        self.assertEqual(len(report["result"]["solved"]), 4)

    def test_karoubi_compare_finds_the_sweedler_gap(self):
        code, report = self.run_command("--backend", "hopf-h4", "karoubi-compare")
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertEqual(report["verdict"], "gap")
        self.assertTrue(report["result"]["witnesses"])

    def test_reports_are_deterministic(self):
        for argv in (
            ("eval", str(data_path("five_coupons.json"))),
            ("--backend", "vect-s3", "center", "--homs"),
        ):
            _, first = self.run_command(*argv, out="first.json")
            _, second = self.run_command(*argv, out="second.json")
            self.assertEqual(first, second)
            self.assertEqual((self.dir / "first.json").read_bytes(), (self.dir / "second.json").read_bytes())

    def test_null_relation(self):
        path = str(data_path("z2_standard.json"))
        code, report = self.run_command(
            "validate", path, "--null", f"1:{path},-1:{path}", "--rect", "1/8,7/8,1/8,3/8"
        )
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertTrue(report["result"]["null_relation"]["null"])

    def test_null_requires_a_rectangle(self):
        path = str(data_path("z2_standard.json"))
        with self.assertRaises(SystemExit):
            execute(["validate", path, "--null", f"1:{path}"], console=self.console)

    def test_timings_are_printed(self):
        code, _ = self.run_command("--timings", "validate", str(data_path("five_coupons.json")))
        self.assertEqual(code, constants.EXIT_ACCEPT)
        self.assertIn("validate: N=1", self.console.text)

    def test_events_are_logged(self):
        events = self.dir / "events.jsonl"
        code, _ = self.run_command("--logging.events_file", str(events), "--backend", "vect-z2", "center")
        self.assertEqual(code, constants.EXIT_ACCEPT)
        logger.remove()
        records = [json.loads(line) for line in events.read_text(encoding="utf-8").splitlines()]
        self.assertEqual(len(records), 1)
        self.assertEqual(records[0]["record"]["level"]["name"], constants.EVENTS_LEVEL)
        self.assertIn("verdict=accept", records[0]["record"]["message"])


class GroupFileTestCase(unittest.TestCase):
    def test_parse_error_points_at_the_entry(self):
        with self.assertRaises(ParseError) as info:
            parse_group_text("2\n0 1\n1 x\n", path="bad.group")
        self.assertEqual(info.exception.path, "bad.group")
        self.assertEqual((info.exception.line, info.exception.column), (3, 3))

    def test_parse_error_on_short_rows(self):
        with self.assertRaises(ParseError) as info:
            parse_group_text("3\n0 1 2\n1 2\n2 0 1\n")
        self.assertEqual(info.exception.line, 3)

    def test_names_are_read(self):
        parsed = parse_group_text("# Z/2\n2\n0 1\n1 0\nnames: e g\n")
        self.assertEqual(parsed.order, 2)
        self.assertEqual(parsed.names, ["e", "g"])


if __name__ == "__main__":
    unittest.main()
