# %% [markdown]
# # Splitting M(Z12) into local pieces
#
# Primitive idempotents of Z12 cut it into corner rings Z4 and Z3. The
# meadow of Z12 is isomorphic to the product of their meadows, and the
# isomorphism is built and checked explicitly.

# %%
import json

from meadows import build_M, parse_ring
from meadows.construct import decompose_local
from meadows.meadow import is_local, meadow_atoms

m = build_M(parse_ring("zn:12"))
print("atoms:", [str(a) for a in meadow_atoms(m)], "local:", is_local(m))

# %%
d = decompose_local(m)
for e, f in zip(d.idempotents, d.factors):
    print(f"idempotent {e}: factor {f.name}, {f.size} elements, local {is_local(f)}")
for line in d.report.lines():
    print(line)

# %% [markdown]
# The factor multiset does not depend on the order of the idempotents.

# %%
again = decompose_local(m, idempotent_order=[1, 0])
print(sorted(d.canonical_forms()) == sorted(again.canonical_forms()))
print(json.dumps(d.to_json(), indent=2)[:600])
