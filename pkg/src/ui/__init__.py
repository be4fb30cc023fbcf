"""
Terminal rendering for galconj
"""
