"""Characteristics transcribed from the source displays, shared by several test files."""
from qtsf.qtalgebra import Q, T
from qtsf.symfunc import schur


def S(*lam):
    return schur(*lam)


# Intersection of the two predecessor modules of (3,2)
PHI_32 = S(4) + S(3, 1).scale(T + Q) + S(2, 1, 1).scale(T * Q) + S(2, 2).scale(Q ** 2)

# Its flips with respect to the two predecessors
FLIP_31_PHI_32 = (S(1, 1, 1, 1).scale(T * Q ** 3) + S(2, 1, 1).scale(Q ** 3 + T * Q ** 2)
                  + S(3, 1).scale(Q ** 2) + S(2, 2).scale(T * Q))
FLIP_22_PHI_32 = (S(1, 1, 1, 1).scale(T ** 2 * Q ** 2) + S(2, 1, 1).scale(T * Q ** 2 + T ** 2 * Q)
                  + S(3, 1).scale(T * Q) + S(2, 2).scale(T ** 2))

# Triple intersection for (3,2,1); the displayed leading term reads S_4 and is taken as S_5
PHI_321_111 = (S(5) + S(4, 1).scale(T + Q) + S(3, 2).scale(T ** 2 + T * Q + Q ** 2)
               + S(3, 1, 1).scale(T * Q) + S(2, 2, 1).scale(Q * T ** 2 + T * Q ** 2))

# The 110 piece for (3,2,1)
PHI_321_110 = S(4, 1).scale(Q ** 2) + S(3, 1, 1).scale(Q ** 2 * (T + Q)) + S(2, 1, 1, 1).scale(Q ** 3 * T)
