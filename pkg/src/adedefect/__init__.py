"""Defect and Hodge numbers of threefold hypersurfaces with A-D-E points."""

__version__ = "0.1.0"
