"""Dehn twists on the torus against the monodromy formula.

For a handful of primitive curves the formula's matrix on H_1 is set
beside the matrix read off by pushing loops through an explicit twist.

    python demos/picard_lefschetz.py
"""

from dehnforge import pl_formula as pl


def main():
    o = pl.fix_orientation()
    print("orientation fixed by the torus oracle:", o)
    for p, q in ((1, 0), (0, 1), (1, 1), (2, 3), (-3, 5)):
        got = pl.monodromy_matrix(pl.torus_slant_data(p, q, o))[1].tolist()
        want = pl.torus_twist_oracle(p, q).tolist()
        print("  curve (%2d, %d): formula %-22s oracle %-22s %s"
              % (p, q, got, want, "agree" if got == want else "DIFFER"))
    print("signs for c = 1..8:", "".join("+" if pl.sign(c) > 0 else "-" for c in range(1, 9)))


if __name__ == "__main__":
    main()
