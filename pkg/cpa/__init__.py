"""
CPA functions as min/max expression trees over affine leaves
"""
