#!/usr/bin/env python3
"""Walk through the bit-level secrecy codes on the truncation channel.

The channel hands the top n1 / n2 / ne bits of each transmitted word to
receiver 1, receiver 2 and the eavesdropper.  A code places message bits so
that each receiver can read its own message while the eavesdropper's view
is statistically independent of either message taken alone: the bits both
messages share are sent one-time-padded against each other, and leftover
positions carry fresh padding.
"""

import random

from bcsecrecy.ldbc import (
    CodeInstance,
    DeterministicChannelParams,
    bits_to_str,
    channel_outputs,
    decode_rx1,
    decode_rx2,
    encode,
    individual_region_membership,
    layout_positions,
)
from bcsecrecy.leakage import verify_code

rng = random.Random(7)

print("=== A strong channel pair against a 1-bit eavesdropper ===")
params = DeterministicChannelParams(n1=4, n2=4, ne=1)
code = CodeInstance(params, r1=2, r2=2)
print(f"gains (n1, n2, ne) = (4, 4, 1), rates (2, 2), layout {code.layout.value}")
print("position map:", layout_positions(code))

m1, m2 = (1, 0), (1, 1)
x = encode(m1, m2, code, rng=rng)
y1, y2, z = channel_outputs(x, params)
print(f"m1={bits_to_str(m1)} m2={bits_to_str(m2)} -> x={bits_to_str(x)}")
print(f"receiver 1 sees {bits_to_str(y1)} and decodes {bits_to_str(decode_rx1(y1, code))}")
print(f"receiver 2 sees {bits_to_str(y2)} and decodes {bits_to_str(decode_rx2(y2, code))}")
print(f"the eavesdropper sees only {bits_to_str(z)} (m1(1) xor m2(1))")

print("\n=== Exact certification by exhaustive enumeration ===")
report = verify_code(code)
for key, value in report.items():
    print(f"  {key}: {value}")
print("individual leakage is exactly zero for both messages, but the xor")
print("bit is visible as *joint* information: this rate pair is achievable")
print("under per-message secrecy yet impossible under joint secrecy.")

print("\n=== Sweeping every feasible rate pair of a channel ===")
params = DeterministicChannelParams(5, 3, 1)
for r1 in range(6):
    for r2 in range(4):
        if not individual_region_membership(r1, r2, params):
            continue
        rep = verify_code(CodeInstance(params, r1, r2))
        status = "ok" if rep["leak1_zero"] and rep["leak2_zero"] else "LEAK"
        print(f"  (r1={r1}, r2={r2}) layout={CodeInstance(params, r1, r2).layout.value:15s}"
              f" pe=({rep['pe1']},{rep['pe2']}) joint={rep['joint_bits']:.1f}b {status}")
