"""Sheets of conjugacy classes in reductive groups, computed combinatorially."""
from .errors import CapabilityError, ResourceError, SheetsError, SpecError
from .rootsys import GroupSpec, RootSystem, build_root_system

__version__ = "0.1.0"

__all__ = ["GroupSpec", "RootSystem", "build_root_system", "SheetsError", "SpecError",
           "CapabilityError", "ResourceError", "__version__"]
