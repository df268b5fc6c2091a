import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def report(capsys):
    """Print one verdict line straight to the terminal, bypassing capture."""

    def emit(label: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}" + (f" :: {detail}" if detail else ""))

    return emit
