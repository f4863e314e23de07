"""
Exact rational geometry: scalars, affine maps, LP feasibility and arrangements
"""
