"""
Test suite for the HARM energy-efficiency simulator.
"""
