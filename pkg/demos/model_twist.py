"""The model Dehn twist on T*S^c, checked numerically.

Walks a covector out along a fiber and prints where the twist sends its
base point, then reports the symplectic, antipodal and equivariance
defects and the Maslov indices of the boundary loops.

    python demos/model_twist.py
"""

import numpy as np

from dehnforge import twist_local as tw


def along_a_fiber(c=2):
    a = tw.AngleProfile(eps=1.0)
    x = np.eye(c + 1)[0]
    y = np.eye(c + 1)[1]
    print("c = %d, base point x = e0, fiber direction e1" % c)
    print("   |y|   angle/pi   image of x")
    for t in (0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0):
        p = tw.CotangentPoint(x, t * y)
        img = tw.model_twist(p, a)
        print("  %4.2f   %7.4f   %s" % (t, a.angle(t) / np.pi, np.round(img.x, 4)))


def defects():
    a = tw.AngleProfile(eps=1.0)
    print("\n c   symplectic   antipodal   support   equivariance")
    for c in (1, 2, 3):
        eq, _ = tw.equivariance_check(a, c, 50, seed=c)
        print(" %d   %9.2e   %9.2e   %7.1e   %9.2e" % (
            c, tw.symplectic_check(a, c, 50, seed=c), tw.antipodal_defect(a, c, 50, seed=c),
            tw.support_defect(a, c, 50, seed=c), eq))


def maslov():
    print("\n c   loop index   section index")
    for c in (1, 2, 3, 5):
        print(" %d   %10d   %13d" % (c, tw.maslov_index_loop(tw.sqrt_z_frame(c)), tw.section_index(c)))


def intersections():
    a = tw.AngleProfile(eps=1.0)
    v0 = np.array([1.0, 0.0, 0.0])
    v1 = np.array([0.6, 0.8, 0.0])
    d = tw.threshold_delta(a, v0, v1)
    res = tw.count_twisted_intersections(v0, v1, a.rescaled(2 * d))
    print("\nfibers over v0, v1 at distance %.4f: %d intersection at |y| = %.6f (residual %.1e)"
          % (np.arccos(v0 @ v1), res.count, res.points[0].norm, res.residuals[0]))


if __name__ == "__main__":
    along_a_fiber()
    defects()
    maslov()
    intersections()
