"""Exact-arithmetic toolkit for the three combinatorial classifications of
strongly solvable spherical subgroups: spherical systems / homogeneous
spherical data, admissible maps with their fans, and sets of active roots.

All arithmetic is exact (Python integers and fractions); nothing in this
package touches floating point.
"""

from spherica.rootsys import DynkinDiagram, RootSystem, build_root_system

__all__ = ["DynkinDiagram", "RootSystem", "build_root_system"]

__version__ = "0.1.0"
