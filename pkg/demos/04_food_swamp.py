"""Score a neighborhood's food environment and link it to its measures.

Run: python3 demos/04_food_swamp.py
"""

from sdohkit import load_file
from sdohkit.data import path, read_text
from sdohkit.measures import (
    SwampConfig,
    classify_food_swamp,
    measures_for,
    read_establishments,
)
from sdohkit.terms import Iri

kb = load_file(path("seed.ofn"))
linked = measures_for(kb, Iri("", "Food_Swamp"))
for m in linked:
    print("measure:", m.local)

shops = read_establishments(read_text("establishments.csv"))
home = (29.76, -95.37)
v = classify_food_swamp(home, shops)
print(f"\n{len(shops)} establishments near {home}")
print(f"unhealthy {v.rfei.unhealthy}, healthy {v.rfei.healthy}, ratio {v.rfei.ratio:.2f}")
print(f"corner stores within 0.4 km: {v.corner_stores}")
print("food swamp:", v.is_food_swamp, v.triggered)

# The radius moves the ratio; the corner-store rule always uses 0.4 km.
for radius in (0.2, 0.5, 1.6):
    r = classify_food_swamp(home, shops, SwampConfig(rfei_radius_km=radius))
    print(f"  radius {radius:>3} km: ratio {r.rfei.ratio}, swamp={r.is_food_swamp}")

