import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction
from unittest import mock

from k3arith.cli import run, selftest
from k3arith.cli.commands import COMMANDS
from k3arith.cli.io import jsonable, render
from k3arith.cli.main import EX_FAILURE, EX_OK, EX_PRECISION, EX_PRECONDITION, EX_USAGE
from k3arith.cli.selftest import CHECKS, FULL_SCOPE, QUICK_SCOPE
from k3arith.padic import AtLeast


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestExitCodes(unittest.TestCase):
    def test_usage(self):
        """
        Missing or unknown subcommands and bad flags exit with 64.
        """
        self.assertEqual(call()[0], EX_USAGE)
        self.assertEqual(call("lattice", "nope")[0], EX_USAGE)
        self.assertEqual(call("lattice", "embed", "--d", "x")[0], EX_USAGE)
        self.assertEqual(call("--version")[0], EX_OK)

    def test_precondition(self):
        """
        Violated preconditions exit with 2.
        """
        code, _, err = call("lattice", "embed", "--d", "0", "--p", "3")
        self.assertEqual(code, EX_PRECONDITION)
        self.assertIn("error", err)
        self.assertEqual(call("crystal", "newton", "not json")[0], EX_PRECONDITION)
        self.assertEqual(call("fgl", "build", "--kind", "honda", "--p", "3")[0], EX_PRECONDITION)

    def test_precision(self):
        """
        A determinant vanishing at the working precision exits with 3.
        """
        crystal = json.dumps({"p": 3, "precision": 2, "frobenius": [[9, 0], [0, 1]]})
        code, _, err = call("crystal", "newton", crystal)
        self.assertEqual(code, EX_PRECISION)
        self.assertIn("insufficient precision", err)

    def test_unexpected(self):
        """
        Unexpected exceptions are logged and exit with 1.
        """

        def boom(args):
            raise RuntimeError("boom")

        with mock.patch.dict(COMMANDS["lattice"], {"build": boom}):
            with self.assertLogs(level="ERROR"):
                self.assertEqual(call("lattice", "build", "--name", "U")[0], EX_FAILURE)


class TestCommands(unittest.TestCase):
    def test_lattice_embed(self):
        """
        The embedding report of d = 2, p = 3.
        """
        code, out, _ = call("lattice", "embed", "--d", "2", "--p", "3", "--json")
        self.assertEqual(code, EX_OK)
        report = json.loads(out)
        self.assertEqual(report["det"], 23)
        self.assertEqual(report["signature"], [20, 2])
        self.assertTrue(report["even"])
        self.assertTrue(report["primitive"])
        self.assertTrue(report["self_dual_at_p"])

    def test_lattice_pipeline(self):
        """
        A built lattice is read back by the other lattice commands.
        """
        code, out, _ = call("lattice", "build", "--name", "K3", "--json")
        self.assertEqual(code, EX_OK)
        self.assertEqual(json.loads(out)["rank"], 22)
        code, out, _ = call("lattice", "signature", "--json", out)
        self.assertEqual(json.loads(out)["signature"], [19, 3])

    def test_crystal_pipeline(self):
        """
        The model crystal written to a file is recognized by k3-check.
        """
        code, out, _ = call("crystal", "k3-model", "--h", "3", "--p", "5", "--json")
        self.assertEqual(code, EX_OK)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "crystal.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write(out)
            code, out, _ = call("crystal", "k3-check", "--input", path, "--json")
        self.assertEqual(code, EX_OK)
        report = json.loads(out)
        self.assertEqual(report["verdict"], "height")
        self.assertEqual(report["height"], 3)

    def test_supersingular_model(self):
        """
        'inf' selects the supersingular model.
        """
        code, out, _ = call("crystal", "k3-model", "--h", "inf", "--json")
        self.assertEqual(code, EX_OK)
        code, out, _ = call("crystal", "k3-check", "--json", out)
        self.assertEqual(json.loads(out)["verdict"], "supersingular")

    def test_fgl(self):
        """
        Heights and p-series of built laws.
        """
        args = ("--kind", "honda", "--h", "2", "--p", "3", "--trunc", "28", "--precision", "4")
        code, out, _ = call("fgl", "height", *args, "--json")
        self.assertEqual(code, EX_OK)
        self.assertEqual(json.loads(out)["height"], 2)
        code, out, _ = call("fgl", "build", *args, "--json")
        code, out, _ = call("fgl", "p-series", "--json", out)
        self.assertEqual(code, EX_OK)
        series = json.loads(out)["p_series"]
        self.assertEqual(series["1"], 3)

    def test_fgl_lift_check(self):
        """
        The lift check of height 2 at p = 2 passes.
        """
        code, out, _ = call(
            "fgl", "lift-check", "--h", "2", "--p", "2", "--precision", "6", "--trunc", "17",
            "--trials", "3", "--json",
        )
        self.assertEqual(code, EX_OK)
        self.assertTrue(json.loads(out)["passed"])

    def test_clifford(self):
        """
        π checks and the filtration report on U + U.
        """
        lattice = json.dumps({"gram": [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]})
        code, out, _ = call("clifford", "pi-check", "--trials", "3", "--json", lattice)
        self.assertEqual(code, EX_OK)
        self.assertTrue(json.loads(out)["passed"])
        code, out, _ = call("clifford", "filtration", "--json", lattice)
        self.assertEqual(code, EX_OK)
        report = json.loads(out)
        self.assertTrue(report["passed"])
        self.assertEqual(report["image_dimension"], 8)

    def test_stable_output(self):
        """
        The same command and seed print the same document.
        """
        argv = ("clifford", "pi-check", "--name", "U", "--seed", "4", "--json")
        self.assertEqual(call(*argv)[1], call(*argv)[1])

    def test_table(self):
        """
        Without --json a two column table is printed.
        """
        code, out, _ = call("lattice", "disc", "--name", "L", "--d", "5")
        self.assertEqual(code, EX_OK)
        self.assertIn("discriminant", out)
        self.assertIn("10", out)


class TestSelftest(unittest.TestCase):
    def test_passes(self):
        """
        The deterministic checks and two randomized ones pass.
        """
        report = selftest(seed=1, trials=2, only=["heights", "negative-controls", "projector", "katz"])
        self.assertTrue(report["passed"])
        self.assertEqual(report["reproducers"], [])
        self.assertEqual(report["checks"]["katz"]["runs"], 2)
        self.assertEqual(report["checks"]["heights"]["runs"], 1)

    def test_workers(self):
        """
        Threads do not change the outcome.
        """
        only = ["trace-isometry", "decomposition"]
        a = selftest(seed=2, trials=3, workers=1, only=only)
        b = selftest(seed=2, trials=3, workers=3, only=only)
        self.assertEqual(json.dumps(jsonable(a)), json.dumps(jsonable(b)))

    def test_reproducers(self):
        """
        A failing randomized check reports one reproducer per trial and
        exits with 1.
        """
        failing = {"always-fails": (lambda rng, scope: {"value": int(rng.integers(10))}, True)}
        with mock.patch.dict(CHECKS, failing, clear=True):
            code, out, err = call("selftest", "--seed", "5", "--trials", "2", "--json")
        self.assertEqual(code, EX_FAILURE)
        report = json.loads(out)
        self.assertFalse(report["passed"])
        self.assertEqual(
            report["reproducers"],
            [
                {"check": "always-fails", "seed": 5, "trial": 0},
                {"check": "always-fails", "seed": 5, "trial": 1},
            ],
        )
        self.assertIn("--only always-fails --seed 5 --trials 2", err)

    def test_cli(self):
        """
        `selftest --only` runs the selected checks.
        """
        code, out, _ = call("selftest", "--only", "lattice-embedding", "--json")
        self.assertEqual(code, EX_OK)
        self.assertEqual(list(json.loads(out)["checks"]), ["lattice-embedding"])

    def test_full_scope(self):
        """
        `--full` hands the whole acceptance ranges to the checks and is
        repeated in the reproducers.
        """
        seen = []

        def record(rng, scope):
            seen.append(scope)
            return {"heights": list(scope.heights)}

        with mock.patch.dict(CHECKS, {"records": (record, True)}, clear=True):
            code, out, err = call("selftest", "--seed", "3", "--trials", "1", "--full", "--json")
        self.assertEqual(code, EX_FAILURE)
        self.assertEqual(seen, [FULL_SCOPE])
        report = json.loads(out)
        self.assertTrue(report["full"])
        self.assertEqual(report["checks"]["records"]["failures"][0]["detail"]["heights"], list(range(1, 11)))
        self.assertIn("--only records --seed 3 --trials 1 --full", err)

    def test_full_ranges(self):
        """
        The full scope extends the quick one and the embeddings pass on
        all of d = 1..25 and p in {2, 3, 5, 7, 11}.
        """
        self.assertEqual(list(FULL_SCOPE.degrees), list(range(1, 26)))
        self.assertEqual(FULL_SCOPE.primes, (2, 3, 5, 7, 11))
        self.assertEqual(FULL_SCOPE.decomposition_heights, (2, 3, 5))
        self.assertEqual(FULL_SCOPE.conjugations, 20)
        self.assertIn((5, 2), FULL_SCOPE.honda)
        for field in ("degrees", "heights", "filtration_ranks", "isometry_ranks"):
            self.assertLessEqual(set(getattr(QUICK_SCOPE, field)), set(getattr(FULL_SCOPE, field)))
        report = selftest(seed=0, only=["lattice-embedding"], full=True)
        self.assertTrue(report["passed"])
        self.assertTrue(report["full"])


class TestIO(unittest.TestCase):
    def test_jsonable(self):
        """
        Rationals become strings, bounds become objects.
        """
        doc = jsonable({"a": Fraction(2, 3), "b": Fraction(4, 2), "c": AtLeast(5), "d": (1, 2)})
        self.assertEqual(doc, {"a": "2/3", "b": 2, "c": {"at_least": 5}, "d": [1, 2]})

    def test_render(self):
        """
        Nested keys are joined by dots.
        """
        text = render({"outer": {"inner": 1}})
        self.assertIn("outer.inner", text)

    def test_seed_env(self):
        """
        The seed falls back to K3ARITH_SEED.
        """
        with mock.patch.dict(os.environ, {"K3ARITH_SEED": "9"}):
            code, out, _ = call("selftest", "--only", "heights", "--json")
        self.assertEqual(json.loads(out)["seed"], 9)


if __name__ == "__main__":
    unittest.main()
