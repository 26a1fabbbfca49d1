"""Smoke test for the pysubpart extension module.

Build and install first, e.g. ``maturin develop -m crates/py/Cargo.toml``,
then run ``python crates/py/python/smoke_test.py``.
"""

import math

import pysubpart as sp


def main():
    lam = sp.Partition.parse("2,2")
    assert lam.parts == [2, 2] and lam.n == 4
    assert str(lam.conjugate()) == "2,2"
    assert sp.Partition([2, 1]).is_subpartition_of(sp.Partition([3, 1]))

    assert sp.count_subpartitions(sp.Partition.parse("2,1")) == 5
    assert sp.count_subpartitions(lam) == 6
    assert sp.count_kchains(lam, 2) == 20
    assert sp.count_bridges_below(lam) == 6
    assert sp.partition_count(100) == 190569292
    # arbitrary precision survives the boundary
    assert sp.count_kchains(sp.Partition([12] * 12), 5) > 2**64

    log_bound, bound = sp.corollary2_bound(lam)
    assert math.log(6) <= log_bound + 1e-9

    assert sp.lambda_star(0.0) == 0.0
    assert abs(sp.lambda_star(0.5) - sp.legendre_numeric(0.5)) < 1e-10
    assert abs(sp.phi(0.0) - math.log(2)) < 1e-15
    assert abs(sp.functional_f() - math.pi / math.sqrt(3)) < 1e-6
    assert abs(sp.functional_f([(-1.0, 1.0), (1.0, 1.0)]) - 2 * math.log(2)) < 1e-12
    assert sp.lower_convex_envelope([0.0, 2.0, 1.0, 3.0]) == [0.0, 0.5, 1.0, 3.0]

    report = sp.find_maximizers(4)
    assert [str(p) for p in report["maximizers"]] == ["3,1", "2,1,1"]
    assert report["max_count"] == 7

    consts = sp.verify_constants()
    assert consts["area_residual"] < 1e-8

    try:
        sp.Partition.parse("1,2")
    except ValueError:
        pass
    else:
        raise AssertionError("increasing parts must be rejected")

    print("pysubpart smoke test passed")


if __name__ == "__main__":
    main()
