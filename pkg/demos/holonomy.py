"""SU(2) holonomies on a five-times-marked sphere.

Solves for a flat connection with traceless holonomy around each marked
point, measures the local dimension of the moduli space, applies half
twists, and finishes with the SU(3) class-square check.

    python demos/holonomy.py
"""

from fractions import Fraction

from dehnforge import holonomy as hol


def five_points():
    dims = []
    for seed in range(10):
        t = hol.solve_rep_variety([Fraction(1, 4)] * 5, seed=seed)
        dims.append(hol.tangent_dimension(t))
    print("five traceless points: local dimensions over 10 solutions", dims)
    t = hol.solve_rep_variety([Fraction(1, 4)] * 5, seed=0)
    print("  residual %.1e, stabilizer dimension %d" % (t.residual(), hol.stabilizer_dimension(t.elements)))
    print("  rho on the first pair: %.6f" % hol.rho_Y(t, [0, 1]))
    return t


def twists(t):
    print("braid relation defect   %.1e" % hol.braid_word(t, [1, 2, 1]).distance(hol.braid_word(t, [2, 1, 2])))
    sq = hol.braid_word(t, [1, 1]).distance(hol.full_twist(t, [0, 1]))
    print("half twist squared vs full twist   %.1e" % sq)
    g, h = t.elements[0], t.elements[1]
    print("half twist vs Ad sqrt(-g h)        %.1e" % hol.half_twist_ad_sqrt_check(g, h))
    print("fiber dimensions (generic, central, half twist):",
          hol.coisotropic_fiber_dim(0.3, "separating-generic"),
          hol.coisotropic_fiber_dim(0.5, "nonseparating-central"),
          hol.coisotropic_fiber_dim(0, "halftwist-pair"))


def su3():
    nu1, nu2 = hol.kr_labels(3, 0)
    print("\nSU(3) labels nu1 = %s, nu2 = %s" % (nu1, nu2))
    print("class square: 500 products within %.1e of the segment" % hol.class_square_segment_check(500, seed=1))


if __name__ == "__main__":
    twists(five_points())
    su3()
