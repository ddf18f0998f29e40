import json
from pathlib import Path

import pytest

from nsemigroup import kernels
from nsemigroup.finops import FiniteOp

GOLDEN = Path(__file__).parent / "golden" / "expected_counts.json"

# binary tables on {0,1}, cells in order (0,0) (0,1) (1,0) (1,1)
OR = FiniteOp(2, 2, (0, 1, 1, 1))
AND = FiniteOp(2, 2, (0, 0, 0, 1))
XOR = FiniteOp(2, 2, (0, 1, 1, 0))
XNOR = FiniteOp(2, 2, (1, 0, 0, 1))
NAND = FiniteOp(2, 2, (1, 1, 1, 0))


@pytest.fixture(scope="session")
def golden():
    return json.loads(GOLDEN.read_text())


@pytest.fixture(params=kernels.available_backends(), ids=lambda b: b.BACKEND)
def backend(request):
    return request.param


def xor_table(n, bias=0):
    """Parity of n bits plus ``bias``, built directly from bit counts."""
    return FiniteOp(2, n, tuple((bin(i).count("1") + bias) % 2 for i in range(2 ** n)))
