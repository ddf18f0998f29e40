"""Regenerate tests/golden/expected_counts.json from the independent oracles.

Multilinear counts come from pointwise evaluation over every polynomial,
table counts from the naive all-pairs checker; neither touches the
symbolic composition or the optimized kernels.
"""
import json
import sys
import time
from pathlib import Path

from nsemigroup.enumeration import naive_enumerate
from nsemigroup.mlpoly import pointwise_associative, poly_from_index

OUT = Path(__file__).resolve().parent.parent / "tests" / "golden" / "expected_counts.json"

MULTILINEAR = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]
TABLES = [(2, 2), (2, 3), (3, 2)]


def main():
    data = {"version": 1, "multilinear": {}, "tables": {}}
    for p, n in MULTILINEAR:
        start = time.time()
        count = sum(pointwise_associative(poly_from_index(i, p, n)) for i in range(p ** (2 ** n)))
        data["multilinear"][f"prime={p},n={n}"] = count
        print(f"GF({p}) n={n}: {count} ({time.time() - start:.1f}s)", file=sys.stderr)
    for k, n in TABLES:
        start = time.time()
        count = len(naive_enumerate(k, n))
        data["tables"][f"k={k},n={n}"] = count
        print(f"k={k} n={n}: {count} ({time.time() - start:.1f}s)", file=sys.stderr)
    OUT.write_text(json.dumps(data, indent=2) + "\n")


if __name__ == "__main__":
    main()
