"""filicoh: exact cohomology of restricted filiform Lie algebras over GF(p)."""

__version__ = "0.1.0"
