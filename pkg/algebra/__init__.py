from .int_matrix import IntMatrix, SnfResult, smith_normal_form, quotient_torsion_primes, quotient_invariants
from .galois_ring import GaloisRing, teichmuller
from .ring_matrix import RingMatrix, SolveResult, linear_solve_mod
