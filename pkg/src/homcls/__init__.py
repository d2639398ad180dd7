"""Homotopy classes of maps into Postnikov stages, computed from cochains."""

__version__ = "0.1.0"
