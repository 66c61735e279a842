# Sheets of PSp4: a semisimple class that is a sheet by itself.
#
# The image of diag(-1, 1, -1, 1) in PSp4 has connected centralizer of type
# A1 x A1 (the two long root SL2's).  That subgroup is not a Levi subgroup,
# its centre is finite, and the class turns out to be rigid.

# %%
from reductive_sheets import GroupSpec, build_root_system
from reductive_sheets.pseudolevi import (admissible_cosets, enumerate_pseudolevis, find_pseudolevi,
                                         levi_envelope, subsystem_of)
from reductive_sheets.sheets import enumerate_sheets, sheet_of_semisimple

spec = GroupSpec.parse("C2")  # adjoint by default
rs = build_root_system(spec)
print(rs, "marks", rs.marks[0])

# %% The five pseudo-Levi classes, from the nodes of the extended diagram.
for pl in enumerate_pseudolevis(rs):
    print(f"{pl.label:28s} levi={pl.is_levi!s:5s} Z/Z0={pl.component_group}  dim Z0={pl.dim_Z0}")

# %% J = {alpha_0, alpha_2}: two orthogonal long roots.
M = find_pseudolevi(rs, subsystem_of(rs, [(0, 0), (0, 2)]))
print(M.cartan_type, "| Levi?", M.is_levi, "| envelope:", levi_envelope(M).cartan_type)

# Only the generator of Z/Z0 = Z/2 gives a coset whose centralizer is exactly M.
print([c.element for c in admissible_cosets(M)])

# %% The sheet through that semisimple class.
s = sheet_of_semisimple(spec, M, (1,))
print(s.jordan.describe(), "n =", s.n, "dim =", s.dim_sheet, "single class:", s.is_single_class)

# %% All six sheets, sorted by class dimension.
for s in enumerate_sheets(spec):
    ind = s.induced_unipotent.name if s.induced_unipotent else "-"
    print(f"{s.jordan.describe():46s} n={s.n:2d} dim={s.dim_sheet:2d} unipotent: {ind}")
