"""
Energy Efficiency Module

This package contains simulators and solvers for energy-efficient resource
allocation in split small-cell networks.
"""
