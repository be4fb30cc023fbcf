"""
Small helpers for galconj: number theory and canonical JSON
"""
