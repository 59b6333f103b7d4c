import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[str, list[tuple[bool, str]]] = defaultdict(list)


class Recorder:
    def __call__(self, criterion, ok: bool, detail: str = "") -> bool:
        key = str(criterion)
        _RESULTS[key].append((bool(ok), detail))
        line = f"criterion {key}: {'PASS' if ok else 'FAIL'}" + (f"  {detail}" if detail else "")
        print(line)
        return ok


@pytest.fixture
def record():
    return Recorder()


def _order(key: str):
    head = key.split()[0]
    return (int(head) if head.isdigit() else 99, key)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS, key=_order):
        entries = _RESULTS[key]
        ok = all(e[0] for e in entries)
        bad = [d for good, d in entries if not good]
        msg = f"criterion {key}: {'PASS' if ok else 'FAIL'}"
        if bad:
            msg += "  (" + "; ".join(bad) + ")"
        terminalreporter.write_line(msg)
