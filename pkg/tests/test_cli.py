"""
Test CLI Module
===============
Script-style tests for the nbpolar command surface.
"""

import io
import json
import logging
import sys
import tempfile
from pathlib import Path
from types import SimpleNamespace

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))

from modules.app.events import make_point_event, make_progress_event
from modules.app.controller import RunController
from modules.cli.main import _ProgressBars, main as cli_main
from modules.code.frozen_io import write_frozen_set
from modules.code.polar import encode
from modules.code.spec import CodeSpec
from modules.errors import FrameDecodeFailure
from modules.gf.field import build_field
from modules.llrv.transform import KernelCoeffs


def toy_code() -> CodeSpec:
    return CodeSpec.from_frozen(8, build_field(2), KernelCoeffs(2, 1), {0: 0, 1: 1, 2: 0, 3: 2, 4: 0})


class FakeController:
    def __init__(self, mode: str = "ok"):
        self.mode = mode
        self.configs = []

    def construct(self, config, on_event=None):  # noqa: ARG002
        self.configs.append(config)
        if self.mode == "runtime":
            raise FrameDecodeFailure(3, "forced")
        if self.mode == "crash":
            raise RuntimeError("worker vanished")
        return SimpleNamespace(code=toy_code(), path=Path(config.output), kernel_scores={(2, 1): 0.125})


def run_case(argv, mode="ok"):
    output = io.StringIO()
    controller = FakeController(mode=mode)
    code = cli_main(argv=argv, controller_factory=lambda: controller, out=output)
    return code, output.getvalue(), controller


def run_real(argv):
    output = io.StringIO()
    code = cli_main(argv=argv, controller_factory=RunController, out=output)
    return code, output.getvalue()


def test_cli() -> None:
    """Run all CLI tests."""
    print("\n" + "=" * 50)
    print("CLI TEST SUITE")
    print("=" * 50 + "\n")

    # usage errors
    code, out, _ = run_case([])
    assert code == 1
    assert "error" in out
    code, out, _ = run_case(["decode"])
    assert code == 1
    code, out, _ = run_case(["timing-report", "--arch", "gpu"])
    assert code == 1
    print("✓ usage errors")

    # construct through the controller, flags reach the config
    code, out, controller = run_case(["construct", "--N", "8", "--K", "3", "--q", "4",
                                      "--alpha", "0x2", "--output", "codes/toy.txt"])
    assert code == 0
    config = controller.configs[0]
    assert (config.N, config.K, config.q, config.alpha) == (8, 3, 4, 2)
    assert "kernel alpha=2 beta=1: proxy=0.125000" in out
    assert "output: codes/toy.txt" in out
    print("✓ construct")

    # runtime failures exit 2
    code, out, controller = run_case(["construct", "--output", "x.txt"], mode="runtime")
    assert code == 2
    assert "E302" in out
    code, out, controller = run_case(["construct", "--output", "x.txt"], mode="crash")
    assert code == 2
    assert "error: worker vanished" in out
    print("✓ runtime error handling")

    # inconsistent settings exit 1
    code, out, _ = run_case(["construct", "--search-kernel", "--alpha", "2", "--output", "x.txt"])
    assert code == 1
    code, out = run_real(["fer-sim", "--decoder", "scl", "--Ls", "16"])
    assert code == 1
    assert "--Ls" in out
    print("✓ configuration errors")

    # timing report reproduces the reference figures
    code, out = run_real(["timing-report", "--format", "json"])
    assert code == 0
    report = json.loads(out)
    assert report["reports"]["dm"]["total_cycles"] == 202714
    assert report["reports"]["st"]["total_cycles"] == 19648
    assert round(report["speedup"], 1) == 10.3
    code, out = run_real(["timing-report"])
    assert code == 0
    assert "speedup st vs dm: 10.3x" in out
    code, out = run_real(["timing-report", "--levels", "19/44"])
    assert code == 2
    code, out = run_real(["timing-report", "--code", "a.txt", "--levels", "19/45"])
    assert code == 1
    print("✓ timing-report")

    # sorter check
    code, out = run_real(["sorter-check", "--W", "4", "--trials", "5"])
    assert code == 0
    assert "2D sorter check" in out
    code, out = run_real(["sorter-check", "--W", "12"])
    assert code == 1
    assert "W=12" in out
    code, out = run_real(["sorter-check", "--W", "4", "--trials", "0"])
    assert code == 1
    print("✓ sorter-check")

    # a point event closes its stage bar
    bars = _ProgressBars(io.StringIO(), disable=True)
    bars(make_progress_event("1 dB", 0.4))
    bars(make_progress_event("2 dB", 0.1))
    bars(make_point_event("1 dB", 1.0, frames=200, errors=5))
    assert list(bars._bars) == ["2 dB"]
    bars.close()
    print("✓ progress bars")

    # logging level follows --verbose / --quiet
    run_real(["sorter-check", "--W", "4", "--trials", "1", "--verbose"])
    assert logging.getLogger().level == logging.DEBUG
    run_real(["sorter-check", "--W", "4", "--trials", "1", "--quiet"])
    assert logging.getLogger().level == logging.ERROR
    run_real(["sorter-check", "--W", "4", "--trials", "1"])
    assert logging.getLogger().level == logging.WARNING
    code, out, _ = run_case(["construct", "--q", "512", "--output", "x.txt"])
    assert code == 1
    assert "q=512" in out
    print("✓ logging levels and field order validation")

    with tempfile.TemporaryDirectory() as tmp:
        code_file = write_frozen_set(toy_code(), Path(tmp) / "toy.txt")

        # encode
        code, out = run_real(["encode", "--code", str(code_file), "--message", "1,2,3"])
        assert code == 0
        expected = encode(toy_code().place_message([1, 2, 3]), toy_code())
        assert "message: 1,2,3" in out
        assert "codeword: " + ",".join(str(int(v)) for v in expected) in out
        code, out = run_real(["encode", "--code", str(code_file)])
        assert code == 1
        code, out = run_real(["encode", "--code", str(Path(tmp) / "missing.txt"), "--random"])
        assert code == 1
        code, out = run_real(["encode", "--code", str(code_file), "--message", "1,2"])
        assert code == 1
        print("✓ encode")

        # timing-report from a code file
        code, out = run_real(["timing-report", "--code", str(code_file), "--L", "2", "--Ls", "4",
                              "--format", "csv"])
        assert code == 0
        assert out.splitlines()[0].startswith("arch,trellis_cycles")
        print("✓ timing-report from code file")

        # fer-sim end to end
        prefix = Path(tmp) / "runs" / "toy"
        code, out = run_real(["fer-sim", "--code", str(code_file), "--decoder", "sc", "--ebn0", "1.0",
                              "--min-errors", "3", "--max-frames", "20", "--output", str(prefix)])
        assert code == 0
        assert prefix.with_suffix(".csv").exists()
        manifest = json.loads(prefix.with_suffix(".json").read_text())
        assert manifest["config"]["decoder"]["kind"] == "sc"
        assert f"csv: {prefix.with_suffix('.csv')}" in out
        print("✓ fer-sim")

        # config file with flag override
        config_file = Path(tmp) / "run.env"
        config_file.write_text(f"code={code_file}\nmessage=0,0,0\n")
        code, out = run_real(["encode", "--config", str(config_file), "--message", "3,3,3"])
        assert code == 0
        assert "message: 3,3,3" in out
        print("✓ config file precedence")

    print("\n" + "=" * 50)
    print("ALL CLI TESTS PASSED ✓")
    print("=" * 50 + "\n")


if __name__ == "__main__":
    try:
        test_cli()
    except AssertionError:
        sys.exit(1)
    sys.exit(0)
