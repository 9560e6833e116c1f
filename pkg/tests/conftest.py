import os
import subprocess
import sys

import pytest

SPECS_SC = [f"A{n}" for n in range(1, 6)] + [f"B{n}" for n in range(2, 5)] + [f"C{n}" for n in range(2, 5)] + ["D4", "G2", "F4"]
SPECS_GL = [f"GL{n}" for n in range(1, 7)]
ALL_SPECS = SPECS_SC + [s + "-ad" for s in SPECS_SC] + SPECS_GL
SMALL_SPECS = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "G2", "GL1", "GL2", "GL3", "A2-ad", "B2-ad"]


def run_cli(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("ZIPMOT_CACHE_DIR", None)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "zipmot", *args],
        capture_output=True,
        text=True,
        env=full_env,
        check=False,
    )


@pytest.fixture
def cli():
    return run_cli
