"""
Core computation for galconj: groups, structure, character tables and classification
"""
