"""Computational workbench for fibered Dehn twists: Novikov-type coefficient
rings, cochain complexes and cones, model twists on T*S^c, SU(2) holonomy
calculus and the fibered Picard-Lefschetz formula."""

__version__ = "0.1.0"
