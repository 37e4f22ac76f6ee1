# %% [markdown]
# # Meadows from group algebras
#
# For a finite abelian group A and each subgroup H, the ring R[A] modulo
# the ideal generated by h - 1 (h in H) is R[A/H]. Ordering subgroups by
# inclusion and adjoining the zero ring at the bottom gives a pre-meadow.

# %%
from meadows import parse_ring
from meadows.construct import build_group_algebra_meadow
from meadows.meadow import check_pre_meadow, invertibility_set, is_common

small = build_group_algebra_meadow(parse_ring("zn:2"), [2])
print([small.vertex_label(v) for v in range(small.dl.size)])
print("common:", bool(is_common(small)))

# %% [markdown]
# With the Klein four-group over F3 the subgroup ideals are not closed
# under intersection, and commonality breaks.

# %%
klein = build_group_algebra_meadow(parse_ring("zn:3"), [2, 2])
print(len(klein.subgroups), "subgroups,", klein.dl.size, "vertices")
print("pre-meadow:", check_pre_meadow(klein).ok)
res = is_common(klein)
print(res.describe())
print([klein.vertex_label(v) for v in invertibility_set(res.witness)])
