"""End-to-end checks of the mclass command line tool.

Usage: test_cli.py <path to mclass> <fixtures dir>
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest

EXE = None
FIXTURES = None


def fixture(name):
    return os.path.join(FIXTURES, name + ".json")


def run(*args):
    return subprocess.run([EXE, *args], capture_output=True, text=True)


def report(*args):
    proc = run(*args)
    if proc.returncode != 0:
        raise AssertionError(f"{args} exited {proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout)


def error(*args):
    proc = run(*args)
    assert proc.stdout == "", "error paths must not print a partial report"
    return proc.returncode, json.loads(proc.stderr)["error"]


class Commands(unittest.TestCase):
    def test_envelope(self):
        r = report("purify", fixture("xor"))
        self.assertEqual(r["command"], "purify")
        self.assertEqual([i["name"] for i in r["inputs"]], ["f"])
        self.assertEqual(len(r["inputs"][0]["sha256"]), 64)
        self.assertIsNone(r["seed"])
        self.assertIn("tool_version", r)

    def test_purify_stripes(self):
        r = report("purify", fixture("stripes"))["result"]
        self.assertFalse(r["was_pure"])
        doc = r["document"]
        self.assertEqual(len(doc["values"]), 2)
        self.assertTrue(all(len(row) == 1 for row in doc["values"]))
        self.assertEqual(doc["y_weights"], ["1/1"])
        self.assertEqual(r["factor_maps"]["col_projection"], [0, 0])

    def test_iso_corners_xor_vs_constant(self):
        r = report("iso", fixture("xor"), fixture("constant"), "--mode", "corners", "--k", "1")["result"]
        self.assertFalse(r["isomorphic"])
        corner = r["distinguishing_corner"]
        self.assertEqual(corner["corner"], "0")
        self.assertEqual((corner["p_f"], corner["p_g"]), ("1/2", "1/1"))

    def test_iso_canonical_relabeled(self):
        r = report("iso", fixture("xor"), fixture("xor_permuted"))["result"]
        self.assertTrue(r["isomorphic"])
        self.assertIsNotNone(r["witness"])

    def test_iso_self_both_modes(self):
        for mode in ("canonical", "corners"):
            r = report("iso", fixture("fstar"), fixture("fstar"), "--mode", mode)["result"]
            self.assertTrue(r["isomorphic"], mode)

    def test_simplicity_xor(self):
        r = report("simplicity", fixture("xor"))["result"]
        self.assertFalse(r["simple"])
        self.assertEqual(r["group_order"], 2)
        self.assertIsNotNone(r["collision_witness"])

    def test_simplicity_fstar(self):
        r = report("simplicity", fixture("fstar"), "--trials", "2000")["result"]
        self.assertTrue(r["simple"])
        self.assertTrue(r["completely_pure"])
        self.assertIsNone(r["collision_witness"])
        self.assertGreaterEqual(r["collision_search"]["length"], 16)

    def test_matdist_constant(self):
        r = report("matdist", fixture("constant"), "--k", "2")["result"]
        self.assertEqual(r["entries"], {"0,0;0,0": "1/1"})

    def test_matdist_sums_to_one(self):
        from fractions import Fraction

        r = report("matdist", fixture("fstar"), "--k", "2")["result"]
        self.assertEqual(sum(Fraction(p) for p in r["entries"].values()), 1)

    def test_matdist_tensor(self):
        r = report("matdist", fixture("tensor"), "--k", "1")["result"]
        self.assertEqual(sum(1 for _ in r["entries"]), 2)

    def test_reconstruct_fstar(self):
        r = report("reconstruct", fixture("fstar"), "--N", "2000", "--depth", "8")["result"]
        self.assertTrue(r["isomorphic_to_source"])

    def test_congruence(self):
        r = report("congruence", fixture("xor"))["result"]
        self.assertEqual(len(r["elements"]), 2)

    def test_sample_shape(self):
        r = report("sample", fixture("xor"), "--N", "5", "--seed", "9")
        self.assertEqual(r["seed"], 9)
        self.assertEqual(len(r["result"]["values"]), 5)


class Determinism(unittest.TestCase):
    def test_byte_identical_outputs(self):
        cases = [
            ("sample", fixture("fstar"), "--N", "20", "--seed", "4"),
            ("reconstruct", fixture("fstar"), "--N", "300", "--seed", "4"),
            ("simplicity", fixture("xor"), "--trials", "100", "--seed", "4"),
            ("matdist", fixture("fstar"), "--k", "2"),
        ]
        with tempfile.TemporaryDirectory() as tmp:
            for args in cases:
                outputs = []
                for i in range(2):
                    path = os.path.join(tmp, f"{args[0]}{i}.json")
                    self.assertEqual(run(*args, "--out", path).returncode, 0)
                    with open(path, "rb") as fh:
                        outputs.append(fh.read())
                self.assertEqual(outputs[0], outputs[1], args[0])
                self.assertEqual(outputs[0].decode(), run(*args).stdout, args[0])


class Errors(unittest.TestCase):
    def test_parse_error(self):
        code, err = error("purify", fixture("bad_weights"))
        self.assertEqual(code, 2)
        self.assertEqual(err["kind"], "ParseError")
        self.assertEqual(err["field"], "x_weights[1]")

    def test_missing_file(self):
        code, _ = error("purify", fixture("no_such_file"))
        self.assertEqual(code, 2)

    def test_bad_flag(self):
        code, _ = error("reconstruct", fixture("xor"), "--tol", "abc")
        self.assertEqual(code, 2)

    def test_budget(self):
        code, err = error("matdist", fixture("xor"), "--k", "9", "--budget", "100")
        self.assertEqual(code, 3)
        self.assertEqual(err["kind"], "BudgetExceeded")
        self.assertEqual(err["required"], str(2**18))

    def test_ambiguity(self):
        code, err = error("reconstruct", fixture("identity3"), "--N", "60", "--depth", "1", "--fixed-depth")
        self.assertEqual(code, 4)
        self.assertEqual(err["kind"], "AmbiguousCell")
        self.assertIn("row_class", err)


class RoundTrip(unittest.TestCase):
    def test_document_round_trip(self):
        # purify of a pure function returns the canonical document; feeding it
        # back must reproduce it exactly.
        with tempfile.TemporaryDirectory() as tmp:
            first = report("purify", fixture("xor_permuted"))["result"]["document"]
            path = os.path.join(tmp, "doc.json")
            with open(path, "w") as fh:
                json.dump(first, fh)
            second = report("purify", path)["result"]["document"]
            self.assertEqual(first, second)


if __name__ == "__main__":
    EXE, FIXTURES = sys.argv[1], sys.argv[2]
    unittest.main(argv=[sys.argv[0]], verbosity=2)
