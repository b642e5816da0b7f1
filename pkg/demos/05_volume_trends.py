"""Coefficient trends across growing boxes on the line.

A tail cell fixes a state everywhere except a finite pattern, so it
restricts to every box at once.  Tracking one coefficient across boxes of
radius 1..6 probes the infinite-volume behavior: at low temperature the
mass concentrates on pairs built from a single ground state, and cells
that differ from a ground state at finitely many sites flow onto its
diagonal constant pair.
"""

import evoalg as ev
from evoalg.limits import TailCell, VolumeScheme

radii = (1, 2, 3, 4, 5, 6)
beta = 5.0
scheme = VolumeScheme(1, radii, 2, coupling=1.0, beta=beta)

const1, const2 = TailCell(1), TailCell(2)
nearly1 = TailCell(1, ((0, 2),))  # ground state 1 flipped at the origin

print(f"one-dimensional boxes, radii {radii}, beta*J = {beta}")

cases = [
    ("(~1,~1) -> (~1,~1)  [diagonal constant pair]", (const1, const1), (const1, const1)),
    ("(~1,flip) -> (~1,~1) [almost-surely ground 1]", (const1, nearly1), (const1, const1)),
    ("(~1,flip) -> itself", (const1, nearly1), (const1, nearly1)),
    ("(~1,~1) -> (~2,~2)  [across ground states]", (const1, const1), (const2, const2)),
]
for title, phi, psi in cases:
    seq = ev.coefficient_sequence(scheme, phi, psi)
    values = " ".join(f"{v:.6f}" for v in seq.values)
    print(f"\n{title}")
    print(f"  values: {values}")
    print(f"  limit estimate {seq.limit_estimate:.6f}, converged={seq.converged}")

# the same flip at milder temperatures: the diagonal pull weakens
print("\ncoefficient onto the diagonal pair vs temperature:")
for b in (0.5, 1.0, 2.0, 5.0):
    warm = VolumeScheme(1, (3,), 2, coupling=1.0, beta=b)
    value = ev.finite_volume_coeff(warm, 3, (const1, nearly1), (const1, const1))
    print(f"  beta*J = {b:>4}: {value:.6f}")

# per-state candidates: mass of each diagonal constant pair per volume
report = ev.low_temp_limit_algebras(1, 2, [1, 2, 3], [0.5, 2.0, 5.0])
print("\nmass on each diagonal constant pair (rows: beta, cols: radius):")
for candidate in report["candidates"]:
    print(f"  state {candidate['state']}:")
    for b, row in zip(report["betas"], candidate["masses"]):
        cells = " ".join(f"{v:.6f}" for v in row)
        print(f"    beta {b:>4}: {cells}")
print("distinct limit candidates:", report["distinct_generators"])
