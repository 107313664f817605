"""Exact Gauss sums in Z[zeta_m] for F_13, m = 13 * 12.

No p-adic numbers are involved: the identities below are checked as
equalities of integer coefficient vectors.
"""

from padic_frobenius import CharacterTable, field_create, gauss_sum, oracle_suite
from padic_frobenius.cyclotomic import verify_davenport_hasse

F = field_create(13)
table = CharacterTable(F)
print(table.ring)
g = gauss_sum(6, table)          # the quadratic character
print("G(phi)^2 =", g * g)       # phi(-1) * 13 = 13

res = verify_davenport_hasse(3, 1, table)
print(res.identity.value, res.params, "passed" if res else "FAILED")

results = oracle_suite(F)
print(f"{sum(map(bool, results))} / {len(results)} identity instances hold")
