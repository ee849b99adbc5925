"""
Modules Package

This package contains the energy-efficiency simulation modules for split
small-cell networks.
"""
