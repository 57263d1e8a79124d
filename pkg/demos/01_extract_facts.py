"""Scan the bundled minimart system and list what the lexical frontend finds.

Each directory holding a build manifest becomes a service. The scanner reads
every Java file and records REST endpoints, outgoing client calls and data
entities, without compiling anything.
"""

from _paths import MINIMART

from msdeps import build_ir, discover_services
from msdeps.ingest import skipped_directories

roots = discover_services(MINIMART)
print("services (ordinal, name):")
for r in roots:
    print(f"  {r.id.ordinal}  {r.name}")
print("skipped directories:", ", ".join(skipped_directories(MINIMART, roots)))

ir = build_ir(roots, base=MINIMART)

print("\nendpoints:")
for e in ir.endpoints:
    print(f"  {e.service:<20} {e.method:<6} {e.path.render()}")

print("\ncalls (URL parts joined; holes shown as {Type}):")
for c in ir.calls:
    flag = "  [unresolvable]" if c.unresolvable else ""
    print(f"  {c.caller:<20} {c.method:<6} {c.url_text()}{flag}")

print("\nentities:")
for ent in ir.entities:
    fields = ", ".join(f"{f.name}:{f.type_name}" for f in ent.fields)
    print(f"  {ent.service:<20} {ent.name:<10} ({ent.kind}) {fields}")
