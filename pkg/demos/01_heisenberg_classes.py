"""
Twisted classes in the Heisenberg group
=======================================

A first walk through the main computation: build the integral Heisenberg
group, pick an automorphism, count its Reidemeister classes and decide
whether two elements are twisted conjugate.
"""

# %%
from twistconj import check_map, complete_images, decide, heisenberg, reidemeister

H = heisenberg()
print(H)
print("[a, b] =", H.word(H.comm(H.gen(0), H.gen(1))))
print("b a    =", H.word(H.parse_word("b a")))

# %%
# An automorphism is given by the images of a and b; the image of
# c = [a, b] follows from them.

phi = check_map(H, complete_images(H, {0: H.parse_word("b"), 1: H.parse_word("a b")}))
for name, img in zip(H.names, phi.images):
    print(f"{name} -> {H.word(img)}")

# %%
# On the abelianization phi acts by a matrix with no eigenvalue 1, so there
# are finitely many classes downstairs (just one).  The center splits it in two.

res = reidemeister(H, phi)
print(res, [H.word(x) for x in res.representatives])
for cls in res.classes:
    print(H.word(cls.representative), "lifted through", [(H.word(g), k) for g, k in cls.layer_trace])

# %%
# decide returns a witness x with phi(x) g = f x, or None.

c = H.gen(2)
print(decide(H, phi, H.identity, c))
x = decide(H, phi, H.identity, H.power(c, 2))
print("x =", H.word(x), " check:", H.mul(phi(x), H.identity) == H.mul(H.power(c, 2), x))

# %%
# A shear fixes c, and any fixed central element forces infinitely many classes.

shear = check_map(H, complete_images(H, {0: H.parse_word("a b"), 1: H.parse_word("b")}))
print(reidemeister(H, shear))
print(reidemeister(H, shear, use_shortcut=False))
