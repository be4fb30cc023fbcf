"""
galconj - exact character tables and Galois-conjugacy classification of finite groups
"""

__version__ = '1.0.0'
