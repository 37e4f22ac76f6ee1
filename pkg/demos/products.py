# %% [markdown]
# # Products of meadows
#
# A product is common exactly when every factor is. Pairing the
# non-common diamond with anything keeps the bad witness alive.

# %%
from itertools import product
from pathlib import Path

from meadows import Meadow, build_M, parse_ring
from meadows.construct import check_product_structure, meadow_product, meadows_isomorphic
from meadows.directed_lattice import load_json
from meadows.meadow import is_common

here = Path(__file__).parent
pool = {
    "M(Z4)": build_M(parse_ring("zn:4")),
    "M(F4)": build_M(parse_ring("poly:p=2,mod=[1,1,1]")),
    "diamond": Meadow(load_json(here / "lattices" / "pi1pi1.json"), name="diamond"),
}
for (pn, p), (qn, q) in product(pool.items(), repeat=2):
    prod = meadow_product(p, q)
    print(f"{pn:8s} x {qn:8s}: {prod.size:4d} elements, common {bool(is_common(prod))}, "
          f"structure ok {check_product_structure(prod).ok}")

# %% [markdown]
# M(Z2) x M(Z3) is the same meadow as M(Z6).

# %%
p = meadow_product(build_M(parse_ring("zn:2")), build_M(parse_ring("zn:3")))
print(meadows_isomorphic(p, build_M(parse_ring("zn:6"))).status)
