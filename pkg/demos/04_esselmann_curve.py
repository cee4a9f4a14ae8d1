"""The Esselmann example: a one-parameter family beyond the simple count.

The product of two triangles is a simple 4-polytope with 6 facets, 15 ridges
and delta = 1, so it is not a truncation polytope.  Its orbifold is weakly
orderable, and the whole deformation picture is carried by a 6x6 Cartan
family A(x, y) with two diagonal-gauge cycle coordinates.  Solutions need
rank A = 5, i.e. det A = 0, and det A(x,y) * 2xy equals an explicit quintic
with a node at the hyperbolic point (1, 1): two transverse branches, so the
deformation space is a singular curve, dimension e_+ - n - 2 delta = 1.
"""

import numpy as np

from coxdeform import bundled, cartan, lorentz, orbifold, vinberg

Q = bundled.load_builtin("esselmann")
print("counts:", orbifold.counts(Q))

fam = vinberg.esselmann_family()
A = cartan.CartanMatrix(fam.matrix(1.0, 1.0), orders=Q.orders)
print("conditions pass:", cartan.check_vinberg_conditions(A).passed)
print(f"det A(1,1) = {np.linalg.det(A.entries):.2e}")

nf = cartan.diagonal_normalize(A)
print("cycle coordinates at the hyperbolic point:", nf.cycle_coordinates)

p = cartan.realize_point_from_cartan(A, 4)
alphas = {facet: p.alphas[k] for k, facet in enumerate(p.facets)}
print("weak order (general position verified):",
      orbifold.weak_order_geometric(Q, alphas).order)

print(f"f(1,1) = {vinberg.esselmann_polynomial(1, 1):.1e}, grad f(1,1) = "
      f"{vinberg.esselmann_polynomial_gradient(1, 1)}")

R = lorentz.realize_gram(Q)
hp = vinberg.hyperbolic_point(R)
report = vinberg.local_deformation_dimension(Q, hp)
print(f"rank D(phi) = {report.rank} of N = 29: kernel - gauge = "
      f"{report.kernel_minus_gauge} (Zariski tangent of the node), "
      f"formula dimension = {report.formula_dim}")

samples = vinberg.family_curve(fam, box=(0.5, 2.0, 0.5, 2.0), res=101)
print(f"contour: {len(samples.segments)} segments, distance to (1,1) = "
      f"{samples.distance_to(1.0, 1.0):.4f}")
with open("esselmann_curve.csv", "w", encoding="utf-8") as fh:
    fh.write("x,y,det\n")
    for r, y in enumerate(samples.ys):
        for c, x in enumerate(samples.xs):
            fh.write(f"{x:.12g},{y:.12g},{samples.values[r, c]:.12g}\n")
print("wrote esselmann_curve.csv")
