"""UWCell - Cell-based planning for 3D underwater sensor networks."""

__version__ = "1.0.0"
