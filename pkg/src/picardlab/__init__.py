"""picardlab: exact verification of curves whose Jacobians split into
CM elliptic factors, with point-counting cross-checks over prime fields.
"""

__version__ = "0.1.0"
