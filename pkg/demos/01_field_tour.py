"""A short tour of the built-in cubic field.

We look at how small primes split, list the ideals of a given norm with their
local densities, and check that varrho(n) comes out the same whether we count
residues directly or assemble it from ideals.

Run with ``python demos/01_field_tour.py``.
"""

from normdiv.density import rho_ideal, varrho_assembled, varrho_direct
from normdiv.field import builtin
from normdiv.ideals import arithmetic

field = builtin("cubic")
arith = arithmetic(field)
print(f"field {field.name}: minimal polynomial {field.minpoly}, discriminant {field.discriminant}")

# The discriminant is 81, so 3 ramifies totally and every other prime either
# splits completely or stays inert (the field is cyclic).
for p in (2, 3, 7, 17, 19):
    parts = arith.split_prime(p)
    print(f"  p = {p:2d}: " + ", ".join(f"(e={P.e}, f={P.f})" for P in parts))

# Ideals of norm 19^2 and the density rho(q) of each one.
for q in arith.ideals_of_norm(19**2):
    print(f"  ideal of norm {q.norm}: rho = {rho_ideal(q).value}")

# Two independent routes to varrho(n).
for n in (12, 19, 27, 361):
    a, b = varrho_direct(field, n).value, varrho_assembled(arith, n).value
    print(f"  varrho({n}) = {a}  (assembled: {b})")
