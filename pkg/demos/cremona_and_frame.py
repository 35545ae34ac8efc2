"""Eigenpoints of two ternary cubics: xyz and the product of three frame lines.

Both have seven real eigenpoints but no robust ones: the gradient map of xyz
is the Cremona involution and that of the frame cubic squares to a multiple of
the identity, so the power method falls into a period-two cycle.
"""
from eigenconfig.dynamics import frame_cubic, power_method_run, robust_eigenpoints, second_iterate_check
from eigenconfig.polycore import HomogeneousForm
from eigenconfig.solver import solve_ternary

x, y, z = (HomogeneousForm.variable(3, i) for i in range(3))

for name, phi in (("xyz", x * y * z), ("frame cubic", frame_cubic())):
    conf = solve_ternary(phi)
    print(f"{name}: {conf.count()} eigenpoints, {len(conf.real_points())} real")
    for ep in conf.points:
        print("   ", ep.point, " lambda =", round(ep.eigenvalue.real, 6))
    out = power_method_run(phi, [0.3, 0.5, 0.1])
    print("    power method:", out.kind, "after", out.iterations, "steps")
    print("    robust eigenpoints:", len(robust_eigenpoints(phi, samples=200)))

ok, c = second_iterate_check(frame_cubic())
print("frame cubic: grad(phi) composed with itself is", c, "* phi * (x, y, z):", ok)
