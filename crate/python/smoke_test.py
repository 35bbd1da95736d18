"""Builds the extension module and exercises it from Python.

    python3 python/smoke_test.py
"""

import json
import math
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def build():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "spinbath-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libspinbath.so"
    out = pathlib.Path(tempfile.mkdtemp()) / "spinbath.so"
    shutil.copy(lib, out)
    sys.path.insert(0, str(out.parent))


def main():
    build()
    import spinbath as sb

    plus = sb.QubitState.plus()
    assert plus.population_imbalance() == 0.0

    data = json.loads((ROOT / "configs" / "electron.json").read_text())
    data.pop("analysis")  # CLI-only block
    cfg = sb.ExperimentConfig.from_json(json.dumps(data))
    assert cfg.n == 4
    again = sb.ExperimentConfig.from_json(cfg.to_json())
    assert again.n == cfg.n and again.tau == cfg.tau

    rho, m, norm = sb.simulate(cfg, dephasing=True)
    closed = sb.reduced_rho(cfg)
    assert abs(norm - 1.0) < 1e-10
    worst = max(abs(rho[i][j] - closed[i][j]) for i in range(2) for j in range(2))
    assert worst < 1e-10, worst
    assert abs(sb.expectation_collapsed_m(cfg)) < 1e-12
    assert abs(sb.decoherence_factor(cfg)) <= 1.0

    try:
        sb.simulate(cfg.with_n(20))
    except ValueError as e:
        assert "cap" in str(e)
    else:
        raise AssertionError("N = 20 should exceed the cap")

    v = sb.verdict_for_k(300.0, 1e-62, 1)
    assert v.undecidable
    assert abs(v.margin_log10 - (300 * math.log10(math.e) - 124)) < 1e-10
    assert v.signal < v.floor

    tiny = sb.LogMagnitude.from_log10(1, -400.0)
    assert float(tiny) == 0.0 and (tiny * tiny).log10 == -800.0

    _, _, gr, _ = sb.delta_theta_floor(1e53, 1e27, 3.4e18)
    assert 1e-63 < gr < 1e-61, gr

    quintic, linear = sb.crossover_n(cfg, 0.5, 10)
    assert linear is None

    local = sb.local_undecidability(cfg, 1e-2)
    assert not local.undecidable

    try:
        import jsonschema
    except ImportError:
        jsonschema = None
    if jsonschema is not None:
        schema = json.loads((ROOT / "schema" / "config.schema.json").read_text())
        for path in sorted((ROOT / "configs").glob("*.json")):
            jsonschema.validate(json.loads(path.read_text()), schema)

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
