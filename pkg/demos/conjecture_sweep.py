"""
The trinomial across m
======================

f(x) = x + x^(s(2^m-1)+1) + x^(t(2^m-1)+1) with (s, t) = (4/11, 10/11) mod 2^m + 1.
"""

import numpy as np
from nihoperm import NihoTrinomial, conjecture_exponents, eq4_root_counts, make_circle, regime
from nihoperm.errors import NotInvertible
from nihoperm.perm import is_permutation_bruteforce, is_permutation_lemma1

# Which m the theorem covers; m = 5, 15 have no exponents at all.
for m in range(1, 16):
    try:
        st = conjecture_exponents(m)
    except NotInvertible:
        st = None
    print(f"m={m:2d}  {regime(m):15s}  (s, t) = {st}")

# Full-field brute force against the unit-circle criterion.
for m in (2, 3, 4, 6, 7, 8):
    f = NihoTrinomial.conjecture(m)
    F = f.field()
    brute = is_permutation_bruteforce(f, F)
    crit = is_permutation_lemma1(*f.lemma1_form(F), F)
    print(f"m={m}: brute force {brute.verdict} over {brute.domain_size} points, "
          f"circle check {crit.verdict} over {crit.domain_size} points")

# The circle map is a bijection iff every F_t has exactly one root on the circle.
for m in (6, 9, 10):
    counts = eq4_root_counts(make_circle(None, m))
    hist = np.bincount(counts)
    print(f"m={m}: number of t with 0, 1, 2, ... roots: {hist.tolist()}")
# m = 10 lies outside the theorem and the counts are not all 1 there.
