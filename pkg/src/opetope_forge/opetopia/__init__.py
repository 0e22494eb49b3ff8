"""Opetopes, pasting-diagram categories and slicing."""

from . import ptree
from .pd import PdError, PdMorphism, pd_compose, pd_hom, pd_identity, pd_objects
from .slicing import SliceFragment, slice_by_algebra, slice_plus
from .tower import Opetope, OpetopeError, boundary, eta, frame, nodes, opetopes, subst

__all__ = [
    "ptree", "Opetope", "OpetopeError", "opetopes", "boundary", "frame", "nodes", "eta", "subst",
    "PdMorphism", "PdError", "pd_hom", "pd_compose", "pd_identity", "pd_objects",
    "SliceFragment", "slice_plus", "slice_by_algebra",
]
