"""Shared finite amalgams for tests."""
from combable.amalgam import finite_amalgam
from combable.oracle import cyclic_group, symmetric_group_3


def s3_z2_s3():
    A, B, C = symmetric_group_3("s", "r"), symmetric_group_3("t", "u"), cyclic_group(2, "z")
    # C embedded as the transposition s (resp. t)
    return finite_amalgam(A, B, C, [A.identity, A.gen_elements[0]], [B.identity, B.gen_elements[0]])


def cyclic_amalgam(m: int, n: int):
    """Z_m *_{Z2} Z_n for even m, n."""
    A, B, C = cyclic_group(m, "x"), cyclic_group(n, "y"), cyclic_group(2, "z")
    return finite_amalgam(A, B, C, [0, m // 2], [0, n // 2])
