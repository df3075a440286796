"""Smoke test for the lucas_realize extension module.

Build the extension and put it on the path first, e.g.

    cargo build -p lucas-realize-py --release
    cp target/release/liblucas_realize.so crates/py/python/lucas_realize.so
    python3 crates/py/python/smoke_test.py
"""

import lucas_realize as lr


def main():
    assert lr.mobius(30) == -1
    assert lr.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert lr.primes_up_to(10) == [2, 3, 5, 7]
    assert lr.mobius_inversion_sums([1, 3, 4, 7, 11, 18]) == [1, 2, 3, 4, 10, 12]

    assert lr.lucas(12) == 322
    assert lr.fib(12) == 144
    assert lr.lucas(300) == lr.fib(298) + 3 * lr.fib(299)
    assert lr.fib_like(1, 3, 7) == 29
    assert lr.kbonacci_prefix([1, 3, 7], 5) == [1, 3, 7, 11, 21]
    assert lr.residue_stream(1, 3, 7, 7) == [1, 3, 4, 0, 4, 4, 1]

    golden = lr.ZeroOneMatrix.golden_mean()
    assert golden.rows() == [[1, 1], [1, 0]]
    assert golden.trace_power(12) == 322
    assert golden.enumerate_periodic_points(4) == 7
    assert golden.least_period_counts(6) == [1, 2, 3, 4, 10, 12]
    assert lr.ZeroOneMatrix.from_text("# golden\n2\n1 1\n1 0\n") == golden
    assert lr.ZeroOneMatrix.kstep(3).trace_power(3) == 7

    lucas = lr.fib_like_prefix(1, 3, 30)
    report = lr.check_exact_realizability(lucas)
    assert report.passed and report.verdict == "pass" and report.checked_up_to == 30

    fib = lr.check_exact_realizability([1, 1, 2, 3, 5])
    assert fib.verdict == "fail"
    assert (fib.first_failure_n, fib.failure_kind, fib.failure_value) == (3, "non_divisibility", 1)

    counts = lr.cycle_counts(lucas[:6])
    assert counts == [1, 1, 1, 1, 2, 2]
    witness = lr.build_witness(counts)
    assert witness.domain_size == 32
    assert witness.cycles()[:3] == [[1], [2, 3], [4, 5, 6]]
    assert witness.fixed_point_counts() == lucas[:6]
    assert witness.verify(lucas[:6])
    assert lr.scale_sequence([1, 3, 4, 7], 2) == [2, 6, 8, 14]

    try:
        lr.cycle_counts([1, 1, 2])
    except ValueError as e:
        assert "not exactly realizable" in str(e)
    else:
        raise AssertionError("expected ValueError")

    try:
        lr.ZeroOneMatrix.kstep(6).enumerate_periodic_points(16)
    except ArithmeticError:
        pass
    else:
        raise AssertionError("expected ArithmeticError")

    reports = lr.congruence_sweep("d_product", max_product=100)
    assert reports[0] == {
        "identity_id": "d_product", "context": "p=2;q=3", "modulus": 6,
        "lhs": 1, "rhs": 1, "holds": True,
    }
    assert all(r["holds"] for r in lr.congruence_sweep("a", max_prime=5000))

    assert lr.obstruct(1, 1, 10)["obstructing_prime"] == 3
    grid = lr.scan_theorem(3, 9, 50)
    survivors = [(c["a"], c["b"]) for c in grid if c["status"] == "realizable_prefix"]
    assert survivors == [(1, 3), (2, 6), (3, 9)]
    assert lr.kbonacci_realizable_seed(3) == [1, 3, 7]
    assert lr.kbonacci_scan(3, 15, 100) == [[1, 3, 7], [2, 6, 14]]

    print("lucas_realize smoke test: ok")


if __name__ == "__main__":
    main()
