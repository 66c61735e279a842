# The order on Jordan classes of SO7 and its maximal elements (the sheets).
# Writes a DOT file that graphviz can render.

# %%
import sys

from reductive_sheets import GroupSpec
from reductive_sheets.sheets import build_poset, to_dot

poset = build_poset(GroupSpec.parse("B3"))
print(len(poset.nodes), "Jordan classes,", len(poset.maximal), "sheets,", len(poset.hasse), "covering relations")

# %% Which Jordan classes lie under the Dixmier sheet of the torus?
torus = next(j for j in poset.nodes if j.M.cartan_type == "T")
for e in poset.edges:
    if e.upper is torus:
        print("  ", e.lower.describe())

# %%
out = sys.argv[1] if len(sys.argv) > 1 else "b3_jordan.dot"
with open(out, "w") as fh:
    fh.write(to_dot(poset, "B3"))
print("wrote", out)
