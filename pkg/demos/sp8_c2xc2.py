# A pseudo-Levi of a pseudo-Levi need not be a pseudo-Levi.
#
# In Sp8 the centralizer of diag(-I2, I2, -I2, I2) has type C2 x C2.  Inside
# each C2 the two long roots form a pseudo-Levi A1 x A1, so C2 x C2 contains a
# rank 4 subsystem 4A1 (long).  That subsystem never arises from the extended
# diagram of C4: it is not the connected centralizer of anything in Sp8.

# %%
from reductive_sheets import GroupSpec, build_root_system
from reductive_sheets.errors import SpecError
from reductive_sheets.pseudolevi import enumerate_pseudolevis, find_pseudolevi
from reductive_sheets.rootsys import generated_subsystem

rs = build_root_system(GroupSpec.parse("C4", "simply_connected"))
pls = enumerate_pseudolevis(rs)
print(len(pls), "classes:", sorted({p.cartan_type for p in pls}))

# %%
M = next(p for p in pls if p.cartan_type == "C2+C2")
print(M.label, "component group", M.component_group)

# %%
longs = [r for r in M.subsystem.roots if rs.is_positive(r) and rs.norms[r] == rs.norms.max()]
inner = generated_subsystem(rs, longs)
print("inside M:", inner.cartan_type)
try:
    find_pseudolevi(rs, inner)
except SpecError as e:
    print("not a pseudo-Levi of Sp8:", e)
