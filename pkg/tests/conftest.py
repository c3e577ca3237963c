import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ZERO_TABLE = Path(__file__).parent.parent / "data" / "riemann_zeros_100k.txt"


@pytest.fixture(scope="session")
def bump():
    from selberglab.zeros import make_bump

    return make_bump()


@pytest.fixture(scope="session")
def zero_table():
    from selberglab.zeros import load_zeros

    if not ZERO_TABLE.exists():
        pytest.skip(
            "zero table missing; run tools/generate_zeros.py "
            f"--count 100000 --out {ZERO_TABLE}"
        )
    return load_zeros(ZERO_TABLE)


@pytest.fixture()
def tiny_table(tmp_path):
    from selberglab.zeros import load_zeros

    p = tmp_path / "three.txt"
    p.write_text("14.134725\n21.022040\n25.010858\n")
    return load_zeros(p)
