"""Finite-type cluster algebras computed from the cluster category of a Dynkin quiver."""

from .category import CCObject, ClusterCategory, TriangleCount, parse_object
from .ccmap import x_of
from .laurent import LaurentPoly
from .qpoly import QPoly
from .quiver import Quiver, build_quiver, standard_quiver

__all__ = ["CCObject", "ClusterCategory", "LaurentPoly", "QPoly", "Quiver", "TriangleCount",
           "build_quiver", "parse_object", "standard_quiver", "x_of"]
