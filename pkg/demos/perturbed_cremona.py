"""Perturbing xyzw by a small quartic gives 40 isolated eigenpoints, all real."""
from fractions import Fraction as F

from eigenconfig.dynamics import cremona_perturbation, perturbation_csv, perturbation_experiment
from eigenconfig.polycore import HomogeneousForm

x = [HomogeneousForm.variable(4, i) for i in range(4)]
rows = perturbation_experiment(x[0] * x[1] * x[2] * x[3], cremona_perturbation(), [F(1, 10000)])
print(perturbation_csv(rows), end="")
