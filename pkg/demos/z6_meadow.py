# %% [markdown]
# # The meadow of Z6
#
# Every ideal of Z6 becomes a vertex carrying its quotient ring. Ideals are
# ordered by reverse inclusion, so (0) sits on top with Z6 itself and the
# unit ideal (1) sits at the bottom with the zero ring, whose only element
# is the absorbent `a`.

# %%
from meadows import build_M, parse_ring
from meadows.meadow import check_all, invertibility_set, minv, to_dot

m = build_M(parse_ring("zn:6"))
for v, ring in enumerate(m.rings):
    print(f"vertex {v}: {m.vertex_label(v):8s} order {ring.order}")
print("carrier size:", m.size)

# %% [markdown]
# Sums and products are computed at the meet of the operands' vertices.
# 1 + (3) and 1 + (2) meet at the bottom, so their sum is `a`.

# %%
x, y = m.element(1, 1), m.element(2, 1)
print(x, "+", y, "=", x + y)
five = m.element(0, 5)
print(five, "*", x, "=", five * x)

# %% [markdown]
# The inverse of 2 lives where 2 first becomes a unit: in Z6/(2) it is 0,
# in Z6/(3) ~ Z3 it is its own inverse.

# %%
two = m.element(0, 2)
print("2 is invertible at vertices", invertibility_set(two))
print("inverse of 2:", minv(two))
print("inverse of 0:", minv(m.zero))

# %%
for line in check_all(m).lines():
    print(line)

# %%
print(to_dot(m))
