"""Pass/fail lines of the acceptance criteria, printed at the end of the run."""

ACCEPTANCE_LINES: dict = {}


def record(n: int, ok: bool, detail: str) -> str:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES[n] = line
    print(line)
    return line
