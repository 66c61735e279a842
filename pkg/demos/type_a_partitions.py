# PGL_n: every pseudo-Levi is a Levi, every sheet is a Dixmier sheet, and
# sheets correspond to partitions of n (the block sizes of the Levi).

# %%
from reductive_sheets import GroupSpec
from reductive_sheets.sheets import enumerate_sheets
from reductive_sheets.unipotent import partitions

for n in range(2, 8):
    sheets = enumerate_sheets(GroupSpec.parse(f"A{n - 1}"))
    p = sum(1 for _ in partitions(n))
    print(f"PGL{n}: {len(sheets):3d} sheets, p({n}) = {p:3d}, all Dixmier: {all(s.is_dixmier for s in sheets)}")

# %% PGL4 in detail: the Levi of the sheet and the Richardson class it contains.
for s in enumerate_sheets(GroupSpec.parse("A3")):
    print(f"{s.jordan.M.cartan_type:10s} n={s.n:2d} dim={s.dim_sheet:2d} -> {s.induced_unipotent.name}")
