"""Smoke test for the tworep Python extension.

Build and install first:  pip install --no-build-isolation -e crates/python
"""

import json

import tworep


def main():
    z2 = tworep.TwoGroup.from_group("cyclic 2")

    pos = tworep.Catalogue(z2, "positive")
    assert pos.objects() == ["1₊", "1₋", "2₊", "2₋"], pos.objects()
    assert pos.dims() == [1, 1, 2, 2]
    assert pos.hom("1+", "2+") == [("x₊", 1)]
    assert pos.hom("1+", "2-") == []
    assert pos.fuse(["y+", "x+"]) == "1⊕u₊"
    assert pos.fuse(["x-", "y-"]) == "1⊕v₋"
    assert pos.transform("x+", "adjoint") == "y₊"

    uni = tworep.Catalogue(z2, "unitary")
    assert uni.fuse(["z+", "z-"]) == "1⊕1⊕u₋⊕u₋"
    assert uni.fuse(["z-", "z+"]) == "1⊕1⊕u₊⊕u₊"

    try:
        uni.fuse(["nope"])
    except KeyError:
        pass
    else:
        raise AssertionError("unknown label accepted")

    spec = {"group": "cyclic 2", "one_form": [2], "postnikov": [{"args": [1, 1, 1], "value": [1]}]}
    twisted = tworep.TwoGroup.from_json(json.dumps(spec))
    report = json.loads(tworep.Catalogue(twisted, "unitary").report("classification"))
    assert len(report["entries"]["obstructed"]) == 1

    for name, tg in tworep.zoo():
        failures = tworep.Catalogue(tg, "positive").verify(max_pairs=20)
        assert failures == [], (name, failures)
        print(f"{name:<10} {tg!r} ok")

    print("smoke test passed")


if __name__ == "__main__":
    main()
