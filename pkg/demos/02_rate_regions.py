#!/usr/bin/env python3
"""Evaluate the single-letter rate regions for finite channel distributions.

Regions come as half-planes a*R1 + b*R2 <= c over nonnegative rates.  Every
evaluator consumes named mutual-information terms, which are measured
exactly from a factored joint distribution over (U, V1, V2, X, Y1, Y2, Z).
"""

from fractions import Fraction

from bcsecrecy.dmbc import (
    InfoTerms,
    info_terms,
    ldbc_as_dmbc,
    region_marton_individual,
    region_marton_joint,
    region_primitive,
    region_superposition,
    region_superposition_lessnoisy,
)
from bcsecrecy.ldbc import DeterministicChannelParams, individual_region_membership


def show(name, region):
    print(f"  {name}:")
    for a, b, c in region.half_planes:
        lhs = {(1, 0): "R1", (0, 1): "R2", (1, 1): "R1+R2"}[(a, b)]
        print(f"    {lhs:5s} <= {c}")
    for sc in region.side_conditions:
        print(f"    side condition [{'ok' if sc.satisfied else 'VIOLATED'}] {sc.description}")


print("=== Hand-picked information terms ===")
terms = InfoTerms(
    i_u_y1=Fraction(3, 2), i_u_y2=Fraction(1), i_u_z=Fraction(1, 4),
    i_v1_y1_g_u=Fraction(3, 4), i_v1_z_g_u=Fraction(1, 4),
    i_v2_y2_g_u=Fraction(1, 2), i_v2_z_g_u=Fraction(1, 4),
    i_v12_z_g_u=Fraction(1, 2), i_v1_v2_g_u=Fraction(0),
)
show("shared cloud only (both messages pad each other)", region_primitive(terms))
show("cloud + one satellite", region_superposition(terms))
show("cloud + two jointly covered satellites", region_marton_individual(terms))
show("same scheme, joint secrecy accounting", region_marton_joint(terms))

print("\n=== The truncation channel as a finite distribution ===")
params = DeterministicChannelParams(3, 2, 1)
dist = ldbc_as_dmbc(params)
measured = info_terms(dist)
print(f"measured I(U;Y2)={measured.i_u_y2}  I(U;Z)={measured.i_u_z}  "
      f"I(V;Y1|U)={measured.i_v1_y1_g_u}  I(V;Z|U)={measured.i_v1_z_g_u}")
region = region_superposition_lessnoisy(measured)
show("superposition with the weak receiver's view as the cloud", region)

print("integer grid agreement with the channel's own membership test:")
for r1 in range(4):
    row = []
    for r2 in range(3):
        analytic = region.contains(r1, r2, tol=1e-9)
        direct = individual_region_membership(r1, r2, params)
        assert analytic == direct
        row.append("X" if direct else ".")
    print(f"  r1={r1}: {' '.join(row)}")
