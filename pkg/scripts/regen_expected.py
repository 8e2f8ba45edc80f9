#!/usr/bin/env python3
"""Regenerate the committed expectations for the corpus manifest.

Every ``eval`` expectation is computed by the reference evaluator
(``reglog.naive``), not the production engine, and then formatted exactly as
the CLI would print it.  The committed files therefore stay an independent
check on the engine: the test suite compares CLI output against them byte
for byte.  All other expectations (formulas, wiring text, verdicts, reports)
describe formats the CLI owns, so they are captured from ``cli.main``.

Usage: python3 scripts/regen_expected.py [--check]

With ``--check`` nothing is rewritten; the script exits 1 if any committed
file is stale.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys

from reglog import cli
from reglog.dsl import load_workspace
from reglog.naive import eval_term_naive
from reglog.term import bare_term

CORPUS = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "corpus")


def eval_expectation(path: str, args: list[str]) -> tuple[int, str]:
    ws = load_workspace(path)
    name = args[1]
    term = ws.terms.get(name) or bare_term(name, ws.signature)
    rel = eval_term_naive(term, ws.model())
    rows = rel.rows()
    if "--json" in args:
        payload = {
            "context": list(rel.context.port_types),
            "support": list(rel.context.support),
            "tuples": [list(r) for r in rows],
        }
        return 0, json.dumps(payload, indent=2) + "\n"
    text = "\n".join(", ".join(r) for r in rows)
    return 0, text + "\n" if text else ""


def cli_expectation(path: str, args: list[str]) -> tuple[int, str]:
    buffer = io.StringIO()
    with contextlib.redirect_stdout(buffer):
        code = cli.main([path, *args])
    return code, buffer.getvalue()


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--check", action="store_true", help="verify instead of rewriting"
    )
    opts = parser.parse_args()

    with open(os.path.join(CORPUS, "manifest.json")) as fh:
        manifest = json.load(fh)

    stale = 0
    for entry in manifest:
        path = os.path.join(CORPUS, entry["file"])
        if entry["args"][0] == "eval":
            code, text = eval_expectation(path, entry["args"])
        else:
            code, text = cli_expectation(path, entry["args"])
        if code != entry["code"]:
            print(
                f"manifest says {entry['file']} {' '.join(entry['args'])} "
                f"exits {entry['code']}, got {code}",
                file=sys.stderr,
            )
            return 1
        target = os.path.join(CORPUS, "expected", entry["expect"])
        current = None
        if os.path.exists(target):
            with open(target, encoding="utf-8") as fh:
                current = fh.read()
        if current == text:
            continue
        stale += 1
        if opts.check:
            print(f"stale: {entry['expect']}")
        else:
            with open(target, "w", encoding="utf-8") as fh:
                fh.write(text)
            print(f"wrote {entry['expect']} ({len(text)} bytes)")
    if opts.check:
        print(f"{len(manifest)} expectations checked, {stale} stale")
        return 1 if stale else 0
    print(f"{len(manifest)} expectations up to date")
    return 0


if __name__ == "__main__":
    sys.exit(main())
