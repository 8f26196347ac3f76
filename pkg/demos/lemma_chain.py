"""
Following one quadratic factor through the argument
===================================================

At m = 5 the argument breaks, which makes it a good place to watch every
step produce something.
"""

from nihoperm import default_field, make_circle
from nihoperm.lemmas import (
    G_poly,
    circle_quadratic_factors,
    lemma2_classify,
    lemma3_uv,
    lemma4_check,
    lemma5_search,
    splitting_set,
)

m = 5
c = make_circle(None, m)
F = c.field

# A quadratic with both roots on the circle that divides some F_t.
t, a, b = circle_quadratic_factors(c)[0]
rep = lemma2_classify(F(a), F(b), F(t), m)
print("divides:", rep.divides, " condition sets:", rep.cond1, rep.cond2, rep.cond3)
print("roots on circle:", rep.circle_roots, " a^(2^m) b = a:", rep.relation_holds)

# u and v lie in the subfield GF(2^5) of GF(2^10), and (v, u^2) is a zero of G.
uv = lemma3_uv(F(a), F(b), m)
print("u, v =", uv.u, uv.v, " residual:", uv.residual)
print("G(v, u^2) =", G_poly(F).eval_int(uv.v.value, F.sqr(uv.u.value)))

# G splits over any field holding the roots of x^5 + x^2 + 1.
print("roots of x^5 + x^2 + 1 in GF(32):", splitting_set(default_field(5)))
print("factorisation holds:", lemma4_check(5))

# So G has zeros over GF(2^m) only when 5 | m.
for k in (3, 4, 5, 6):
    print(f"m={k}: {len(lemma5_search(k))} zeros of G")
