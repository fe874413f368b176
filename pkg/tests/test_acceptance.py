"""End-to-end acceptance checks.

Each test runs one named verification suite at its contracted sample
count and tolerance, printing a single PASS/FAIL line.
"""

import time

import pytest

from sliceregular.verify import run_suite

CRITERIA = [
    # (criterion number, suite name, samples, time budget in seconds)
    (1, "twistor-commute", 1000, 5.0),
    (2, "quartic-membership", 1000, None),
    (3, "klein-reality", 1000, None),
    (4, "transform-spot", 20, None),
    (5, "transform-roundtrip", 200, None),
    (6, "gradient", 200, None),
    (7, "rank-equivalence", 500, None),
    (8, "zeros-multiplicity", 500, None),
    (9, "double-cover", 1000, None),
    (10, "jjjj", 100, None),
    (11, "discriminant-resultant", 1000, None),
    (12, "fiber-classification", 20, 10.0),
    (13, "nullstellensatz", 40, None),
    (14, "singular-locus", 100, None),
]


@pytest.mark.parametrize("number,suite,samples,budget", CRITERIA,
                         ids=[f"criterion-{n:02d}-{s}" for n, s, _, _ in CRITERIA])
def test_acceptance(number, suite, samples, budget):
    start = time.time()
    result = run_suite(suite, seed=2024, samples=samples)
    elapsed = time.time() - start
    print(f"criterion {number:2d}: {result.summary()} ({elapsed:.2f}s)")
    assert result.passed, result.summary()
    if budget is not None:
        assert elapsed < budget, f"suite {suite} took {elapsed:.2f}s"
