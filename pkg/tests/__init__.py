"""
Test suite for galconj
"""
