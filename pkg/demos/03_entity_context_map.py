"""Match data entities across services and build the context map.

Names are compared with a token-aware Levenshtein score; two entities match
when the score passes the threshold and enough fields share a name and type.
Matches are closed transitively into equivalence classes.
"""

from _paths import MINIMART

from msdeps import build_ir, discover_services, match_entities, name_similarity

for a, b in [("Trip", "Journey"), ("User", "UserDto"), ("Order", "OrderAlterInfo"), ("ticket_info", "TicketInfo")]:
    print(f"similarity({a!r}, {b!r}) = {name_similarity(a, b):.4f}")

ir = build_ir(discover_services(MINIMART), base=MINIMART)
matches, eq = match_entities(ir)
print("\nentity matches:")
for m in matches:
    print(f"  {m.a.service}.{m.a.name} ~ {m.b.service}.{m.b.name}  "
          f"score={m.name_score:.2f} fields={m.matched_field_count}")
print("\ncontext map:")
for cls in eq.classes:
    print("  " + " = ".join(f"{e.service}.{e.name}" for e in cls))
