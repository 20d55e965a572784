from beltrami_cert.transforms.grid import RadialGrid
from beltrami_cert.transforms.lpstd import LpStd, Region
from beltrami_cert.transforms.operators import cauchy_transform, cp_constant, hilbert_transform

__all__ = ["RadialGrid", "LpStd", "Region", "cauchy_transform", "cp_constant", "hilbert_transform"]
