# %% [markdown]
# # A pre-meadow that is not common
#
# The lattice in `lattices/pi1pi1.json` has Z2 x Z2 on top, two copies of Z2
# below it through the two coordinate projections, a shared Z2 under both,
# and the zero ring at the bottom. All pre-meadow laws hold, but the element
# (1,0) at the top has no single best place to be inverted.

# %%
from pathlib import Path

from meadows import Meadow
from meadows.directed_lattice import load_json
from meadows.meadow import check_pre_meadow, invertibility_set, is_common, is_local

here = Path(__file__).parent
m = Meadow(load_json(here / "lattices" / "pi1pi1.json"), name="pi1pi1")
print(check_pre_meadow(m))

# %%
res = is_common(m)
print(res.describe())
w = res.witness
print("vertices where", w, "is a unit:", [m.vertex_label(v) for v in invertibility_set(w)])

# %% [markdown]
# Both side vertices see (1,0) as a unit and neither lies above the other,
# so no inverse can be chosen. The meadow is still local: only one atom.

# %%
print("local:", is_local(m))
