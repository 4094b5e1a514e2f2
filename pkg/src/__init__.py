"""
Maximal Subalgebra Workbench
Exact membership, conductor and orbit oracles for the maximal subalgebras
of k[t, t^-1, y], with the curve and glueing constructions around them
"""

__version__ = "1.0.0"
