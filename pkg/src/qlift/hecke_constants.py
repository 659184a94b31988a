"""Frozen conventions for the half-integral T_{p^2}.

The middle term of T_{p^2} carries a Kronecker factor (+-n/p).  Three placements
of the sign were tried against the lift/Hecke commutation identities
S_1(F | T_{p^2}) = eps(p) S_1(F) | T_p on both grids; only the sign taken from
the residue class of n passes on all inputs (see tests/test_hecke_convention.py).
"""

TP2_SIGN_VARIANTS = ("class_sign", "kappa_sign", "no_sign")
TP2_SIGN_VARIANT = "class_sign"
