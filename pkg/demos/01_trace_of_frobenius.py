"""Count points on y^2 = x^3 + 2x + 1 over F_7 three ways.

Brute force sums the quadratic character; the two G-function formulas
reach the same integer through p-adic gamma values and Teichmuller lifts.
"""

from padic_frobenius import ShortW, field_create, trace_bruteforce, trace_thm12, trace_thm13

F = field_create(7)
a, b = F(2), F(1)
curve = ShortW(a, b)
print(curve)
print("brute force      a_7 =", trace_bruteforce(curve))

rep = trace_thm12(a, b)
print("quarter/third    a_7 =", rep.value, " from G =", rep.gvalue.value)

rep = trace_thm13(a, b)
print("through k =", rep.details.split()[0][2:], " a_7 =", rep.value, " from G =", rep.gvalue.value)

# Over F_25 the same formula works with coefficients outside F_5.
F25 = field_create(5, 2)
a, b = F25([1, 1]), F25(2)
print()
print(ShortW(a, b))
print("brute force      a_25 =", trace_bruteforce(ShortW(a, b)))
print("quarter/third    a_25 =", trace_thm12(a, b).value)
