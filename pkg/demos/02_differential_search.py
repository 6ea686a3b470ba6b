"""Searching for degree-adjacent word pairs.

A differential in a spectral sequence can only connect classes whose
total degrees differ by one and whose homological degrees drop by more
than one.  This script enumerates all such candidate pairs among
admissible words of a fixed length.  Up to length 8 the refined search
comes back empty; at length 9 (p = 3) the first candidates appear,
among them a pair with homological drop 2p - 1 = 5.
"""

import time

from hochhom import diff_candidates

p = 3

print(f"refined search at p={p}, lengths 2..8, degree bound 200:")
for n in range(2, 9):
    t0 = time.perf_counter()
    cands = diff_candidates(n, p, 200, "refined")
    dt = time.perf_counter() - t0
    print(f"  length {n}: {len(cands)} candidates ({dt:.3f}s)")

print()
print(f"length 9 at p={p}, raw exponent cap from degree bound 170:")
cands = diff_candidates(9, p, 170, "refined")
print(f"  {len(cands)} candidates; the drop-5 pairs:")
for c in cands:
    if c.drop == 5:
        print(f"    {c.key_line()}")
        print(f"      {c.human_line()}")

print()
print("raw mode keeps every exponent assignment under the cap and")
print("applies no letter conditions; refined is always a subset:")
raw = diff_candidates(9, p, 170, "raw")
ref = diff_candidates(9, p, 170, "refined")
print(f"  raw {len(raw)}, refined {len(ref)}")
