"""Smoke test for the pymannheim extension module.

Build the module first, e.g. with `maturin develop -m crates/python/Cargo.toml`,
or copy `target/release/libpymannheim.so` next to this file as `pymannheim.so`.
"""

import pymannheim as pm


def main():
    assert pm.split_prime(7) == (1, 2)
    assert pm.split_prime(193) == (7, 9)
    assert pm.label_ratio(193, 7, 9) == 85

    f7 = pm.Field(7)
    assert [f7.representative(l) for l in range(7)] == [
        (0, 0), (1, 0), (-1, 1), (0, 1), (0, -1), (1, -1), (-1, 0)
    ]
    assert f7.mu(2) == (0, -1, "w_bar")
    assert f7.mul(3, 5) == 1

    f193 = pm.Field(193)
    assert f193.representative(9) == (-7, 7)
    assert f193.representative(94) == (2, -8)
    assert f193.representative(108) == (0, -1)
    x, y, z = f193.label_of(-6, 7), f193.label_of(1, 0), f193.label_of(1, -1)
    assert (x, y, z) == (10, 1, 109)
    assert f193.distance("wM", x, y) > f193.distance("wM", x, z) + f193.distance("wM", z, y)
    assert f193.weight("graph", 94) == 8 < f193.weight("wm", 94) == 10

    report = f193.audit("wM", trials=100_000, seed=1)
    assert report["axioms"]["triangle"] == "fail"
    assert pm.Field(43).audit("graph", exhaustive=True)["violation_count"] == 0
    assert f7.compare()["ordering_holds"]

    f19 = pm.Field(19)
    code = pm.Code(f19, 0)
    assert (code.n, code.k) == (3, 2)
    c = code.encode([4, 11])
    assert code.is_codeword(c)
    y = list(c)
    y[2] = f19.add(y[2], f19.label_of(0, 1))
    d = code.decode(y)
    assert d["status"] == "corrected" and d["error_position"] == 2
    assert [int(v) for v in d["codeword"].split(",")] == c
    assert code.message_of(c) == [4, 11]
    assert code.is_codeword(code.wshift(c))

    perfect = code.verify_perfect()
    assert perfect["packing_identity_holds"] and perfect["exhaustive_partition_verified"]

    stats = pm.Code(pm.Field(37)).simulate(2000, 42, 0.05)
    assert stats["single_error_corrected"] == stats["single_error_trials"] > 0
    assert stats == pm.Code(pm.Field(37)).simulate(2000, 42, 0.05)

    try:
        pm.Field(11)
    except ValueError as e:
        assert "11" in str(e)
    else:
        raise AssertionError("Field(11) should fail")

    print("pymannheim smoke test passed")


if __name__ == "__main__":
    main()
