"""
graphoplex: graph homology of mated species and the symplectic side
"""

__version__ = "1.0.0"
