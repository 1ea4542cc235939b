"""
Curves of prescribed gonality with the maximal number of rational points.
"""

__version__ = "1.0.0"
