import json
import os
import sys

import im3

data = os.environ.get("IM3_DATA_DIR", "data")


def spec(name):
    with open(os.path.join(data, "curves", name + ".json")) as f:
        return f.read()


def main():
    # class numbers
    assert im3.class_number(-163)["h"] == 1
    assert im3.class_number(-4)["forms"] == [(1, 0, 1)]
    assert im3.class_number_one_discs(200) == [-3, -4, -7, -8, -11, -19, -43, -67, -163]

    # splitting
    assert im3.split_type(1, 3)["kind"] == "inert"
    st5 = im3.split_type(1, 5)
    assert st5["kind"] == "split" and st5["pi"] == (2, 1)
    assert im3.split_type(7, 7)["kind"] == "ramified"

    # counts and the L-polynomial at a reference prime
    n1, n2, n3 = im3.count_triple(spec("d1"), 5)
    assert (n1, n2, n3) == (6, 26, 96)
    assert im3.lpoly_from_counts(5, 6, 26, 96) == (0, 0, -10)
    assert im3.shortcut_inert(3, 4, 10) == im3.lpoly_from_counts(3, 4, 10, 28)

    # one short pipeline run: every verdict passes, inert traces vanish
    records = im3.run_curve(spec("d3"), 40)
    assert records, "no records"
    for r in records:
        assert not r.get("violations"), r
        if r["split_type"] == "inert":
            assert r["ap"] == 0
    # the Hecke value at the first split prime of d3 (p = 7)
    r7 = [r for r in records if r["p"] == 7][0]
    assert r7["split_type"] == "split" and r7["psi"] == [-3, 1, 3]

    # differential signature of the worked example
    sig = im3.signature_report(spec("ex29"))
    assert sig["eigenvalues"] == ["i", "-i", "i"]
    assert sig["signature"] == (2, 1) and sig["unital"]

    # elliptic traces
    assert im3.ec_ap(1, 0, 7) == 0 and im3.ec_ap(1, 0, 5) == 2

    print("smoke ok")


if __name__ == "__main__":
    sys.exit(main())
