"""Free-group certificates for matrix pairs over Q(t) via the Bruhat-Tits building of GL_n."""

__version__ = "0.1.0"

from .exactalg import INFINITY, Poly, RatFn, T, residue_inf, substitute, val_inf
from .matqt import MatK, char_poly, is_projective_identity, residue_matrix, val_matrix
from .building import ApartmentVertex, VertexClass, apartment_intersection, vertex_distance, vertex_eq
from .sphlink import Flag, opposite
from .burau import burau_reduced, burau_unreduced, family_generators, family_pair
from .certify import Certificate, Presentation, certify_family, certify_pair, sweep_family
from .oracle import freeness_scan
from .parsing import parse_matrix_text

__all__ = [
    "INFINITY", "Poly", "RatFn", "T", "residue_inf", "substitute", "val_inf",
    "MatK", "char_poly", "is_projective_identity", "residue_matrix", "val_matrix",
    "ApartmentVertex", "VertexClass", "apartment_intersection", "vertex_distance", "vertex_eq",
    "Flag", "opposite",
    "burau_reduced", "burau_unreduced", "family_generators", "family_pair",
    "Certificate", "Presentation", "certify_family", "certify_pair", "sweep_family",
    "freeness_scan", "parse_matrix_text",
]
