"""
Stand-alone reproduction scripts
"""
