"""Plücker bitangent formula by intersection theory, with a numerical cross-check."""

__version__ = "0.1.0"

from .derivation import bitangent_count, derivation_report, flex_count
from .polyring import FormalPolynomial, Rational

__all__ = ["FormalPolynomial", "Rational", "bitangent_count", "derivation_report", "flex_count"]
