"""
Exact engine for hourglass plabic graphs and the rotation-invariant SL4 web basis.
"""

__version__ = "0.3.0"
