"""Smoke test for the ratmodel_py extension module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`.
"""

import json
from fractions import Fraction

import ratmodel_py as rm


def main():
    s3 = rm.Group("S3")
    assert s3.order() == 6
    assert s3.elements()[0] == "()"

    ring = rm.BurnsideRing(s3)
    marks = [[int(x) for x in row] for row in ring.marks()]
    assert marks == [[6, 0, 0, 0], [3, 1, 0, 0], [2, 0, 2, 0], [1, 1, 1, 1]], marks
    assert ring.split_unit_passes()
    total = [sum(Fraction(e[i]) for e in ring.idempotents()) for i in range(ring.rank())]
    assert total == [0, 0, 0, 1], total
    # (G/e) x (G/e) = 6 G/e
    sq = ring.multiply(["1", "0", "0", "0"], ["1", "0", "0", "0"])
    assert [Fraction(x) for x in sq] == [6, 0, 0, 0], sq
    assert ring.power_decomposition("(0 1)", 2) == [(0, 1), (1, 1)]

    reg = rm.Complex.regular(s3)
    assert reg.homology() == [(0, 6)]
    assert reg.tensor(reg).dims() == [36]
    assert rm.Complex.from_json(reg.to_json()).dims() == [6]
    json.loads(reg.to_json())

    c2 = rm.Group("C2")
    ea = rm.EaCategory(c2, 2)
    # W-orbits on W^(a+b)
    assert ea.hom_dims() == [[1, 1, 2], [1, 2, 4], [2, 4, 8]], ea.hom_dims()
    assert ea.ring_iso_holds()
    assert ea.morita_roundtrip(rm.Complex.regular(c2))
    assert ea.morita_unit(1)

    assert rm.skew_dihedral(4) == (True, 8)
    print("ratmodel_py smoke test: ok")


if __name__ == "__main__":
    main()
