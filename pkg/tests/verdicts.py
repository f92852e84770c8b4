"""One-line verdicts for the acceptance criteria, echoed in the pytest summary."""

import sys

LINES: list[str] = []


def record(number, parts):
    """``parts`` is a list of (label, ok, detail).  Prints and stores one line."""
    ok = all(p[1] for p in parts)
    body = "; ".join(f"{label}={'ok' if good else 'FAILED'} ({detail})"
                     for label, good, detail in parts)
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} | {body}"
    LINES.append(line)
    print(line, file=sys.__stdout__, flush=True)
    return ok
