"""
Gonal project package.
"""
