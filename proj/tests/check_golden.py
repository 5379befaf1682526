#!/usr/bin/env python3
"""Compares CLI stdout and stderr with the files in tests/golden.

Usage: check_golden.py CLI GOLDEN_DIR FIXTURES [--update]
"""

import json
import os
import subprocess
import sys


def render(proc):
    text = proc.stdout
    if proc.stderr:
        text += "--- stderr\n" + proc.stderr
    return text


def main():
    cli, golden, fixtures = sys.argv[1:4]
    update = "--update" in sys.argv[4:]
    with open(os.path.join(golden, "cases.json")) as fh:
        cases = json.load(fh)
    failures = 0
    for case in cases:
        argv = [cli] + [a.format(f=fixtures) for a in case["args"]]
        proc = subprocess.run(argv, capture_output=True, text=True)
        # Fixture paths appear in some messages; keep goldens location-free.
        got = render(proc).replace(fixtures + "/", "")
        path = os.path.join(golden, case["name"] + ".txt")
        if update:
            with open(path, "w") as fh:
                fh.write(got)
        with open(path) as fh:
            want = fh.read()
        problems = []
        if proc.returncode != case["exit"]:
            problems.append(f"exit {proc.returncode}, expected {case['exit']}")
        if got != want:
            problems.append("output differs")
        if problems:
            failures += 1
            print(f"FAIL {case['name']}: {', '.join(problems)}")
            if got != want:
                print("--- expected\n" + want + "--- got\n" + got)
        else:
            print(f"ok   {case['name']}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
