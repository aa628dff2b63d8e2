"""Smoke test for the pyfundom extension.

Build and run from the repository root:

    cargo build --release -p fundom-py
    cp target/release/libpyfundom.so python/pyfundom.so
    python3 python/smoke_test.py
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pyfundom as fd


def main():
    g = fd.Permutation.from_cycles(3, "(1 2 3)")
    assert g.images() == [2, 3, 1]
    assert g.act(["a", "b", "c"]) == ["c", "a", "b"]
    assert (g * g.inverse()).order() == 1
    assert str(g * g) == "(1 3 2)"

    s3 = fd.PermGroup.symmetric(3)
    assert s3.order() == 6
    assert g in s3
    assert fd.PermGroup.from_json(s3.to_json()).order() == 6

    c3 = fd.PermGroup.cyclic(3)
    c3_blocks = fd.PermGroup(6, ["(1 2 3)", [1, 2, 3, 5, 6, 4]])
    assert c3_blocks.order() == 9
    assert c3_blocks.orbits() == [[1, 2, 3], [4, 5, 6]]

    reduced = fd.ssp_reduced(s3)
    assert len(reduced) == 2
    assert reduced.cut_format() == "1 x1 - 1 x2 >= 0\n1 x2 - 1 x3 >= 0\n"
    assert fd.ssp(s3).mutually_implies(reduced)
    assert fd.ssp(c3).classify([1, 1, 0]) == "boundary"
    assert fd.ssp(c3).classify([Fraction(1, 2), 0, -1]) == "interior"
    assert fd.ssp(c3).classify(["0", "1", "1"]) == "outside"

    domain = fd.gdd(c3_blocks, "orbit-weights:2")
    assert len(domain) == 4
    assert fd.fix_orthogonality_check(domain)
    assert fd.facet_elements_generate(c3_blocks, domain.irredundant_core())
    assert fd.effectiveness(c3_blocks, fd.ssp(c3_blocks))["lambda"] == 4
    assert fd.effectiveness(c3_blocks, domain)["lambda"] == 1

    report = fd.verify(c3_blocks, domain, trials=300, seed=3)
    assert report["passed"], report
    assert report["coverage_failures"] == 0

    alpha = fd.k_universal_vector(6, 2)
    assert alpha == ["32", "16", "8", "4", "2", "1"]
    dirichlet = fd.dirichlet(c3_blocks, alpha)
    assert dirichlet.mutually_implies(fd.gdd(c3_blocks, [alpha]))

    witness = fd.effectiveness(c3, fd.ssp(c3))["witness_representatives"]
    assert witness == [[1, 1, 0], [1, 0, 1]]
    assert fd.in_closure_lex(c3, [1, 1, 0])
    assert not fd.in_lex(c3, [0, 1, 1])
    assert fd.lex_max_in_orbit(c3, [0, 1, 1]) == ["1", "1", "0"]
    assert not fd.is_lex_closed(c3) and fd.is_lex_closed(s3)

    klein = fd.PermGroup(4, ["(1 2)", "(3 4)"])
    assert fd.min_generating_size(klein) == 2

    try:
        fd.PermGroup(3, ["(1 4)"])
    except ValueError as e:
        assert "column" in str(e) or "point" in str(e), e
    else:
        raise AssertionError("bad cycle accepted")

    print("pyfundom smoke test: ok")


if __name__ == "__main__":
    main()
