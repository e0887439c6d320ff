"""Run the README examples and compare their output."""
import contextlib
import io
import os
import re
import shlex
import subprocess
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
README = (ROOT / "README.md").read_text()


def console_examples():
    for block in re.findall(r"```console\n(.*?)```", README, re.S):
        command, expected = None, []
        for line in block.splitlines():
            if line.startswith("$ "):
                if command:
                    yield command, expected
                command, expected = line[2:], []
            else:
                expected.append(line)
        if command:
            yield command, expected


EXAMPLES = list(console_examples())


def test_readme_has_examples():
    assert len(EXAMPLES) >= 5


@pytest.mark.parametrize("command, expected", EXAMPLES, ids=[c for c, _ in EXAMPLES])
def test_console_example(command, expected):
    argv = shlex.split(command)
    assert argv[0] == "graphprod"
    env = dict(os.environ)
    out = subprocess.run(
        [sys.executable, "-m", "graphprod.cli", *argv[1:]], cwd=ROOT, env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.splitlines() == expected


def test_python_snippet():
    code = re.search(r"```python\n(.*?)```", README, re.S).group(1)
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        exec(compile(code, "README.md", "exec"), {})
    printed = buf.getvalue().splitlines()
    comments = [line.split("# ")[-1] for line in code.splitlines() if line.startswith("print(")]
    assert printed == comments
