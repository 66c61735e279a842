# Exceptional groups: sheets need only the rigid unipotent classes of each
# pseudo-Levi, which ship as data tables for G2, F4 and E6.

# %%
from collections import Counter

from reductive_sheets import GroupSpec
from reductive_sheets.errors import CapabilityError
from reductive_sheets.sheets import enumerate_sheets

for text in ["G2", "F4", "E6"]:
    sheets = enumerate_sheets(GroupSpec.parse(text))
    kinds = Counter("single class" if s.is_single_class else
                    "Dixmier" if s.is_dixmier else "other" for s in sheets)
    print(f"{text}: {len(sheets)} sheets {dict(kinds)}")

# %% G2 in full
for s in enumerate_sheets(GroupSpec.parse("G2")):
    print(f"{s.jordan.describe():40s} n={s.n:2d} dim={s.dim_sheet:2d} levi envelope {s.envelope.cartan_type}")

# %% Without a table the engine says which file it needs.
try:
    enumerate_sheets(GroupSpec.parse("E8"))
except CapabilityError as e:
    print("E8:", e)
