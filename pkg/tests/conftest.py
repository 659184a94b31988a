import pytest


@pytest.fixture
def report(capsys):
    """Print a one-line verdict that survives pytest output capture."""

    def emit(label: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))

    return emit
