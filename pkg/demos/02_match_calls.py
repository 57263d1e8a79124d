"""Resolve client calls to endpoints by signature matching.

A call matches an endpoint when the HTTP verb, segment count and literal
segments agree, and literal values fit the type of each endpoint variable.
The most specific candidate wins; ties are kept but flagged ambiguous.
"""

from _paths import MINIMART

from msdeps import build_ir, discover_services, match_signature, normalize_path, resolve_calls
from msdeps.model import EndpointDef, Lit, Param, PathTemplate, RestCall, SourceLoc

# A single call against two candidate endpoints.
call = RestCall("web", (Lit("http://orders/api/v1/orders/42"),), "GET", 1, "Order", SourceLoc("Web.java", 7))
by_id = EndpointDef("orders", PathTemplate.parse("/api/v1/orders/{Long}"), "GET", (Param("id", "Long", "path"),))
by_name = EndpointDef("orders", PathTemplate.parse("/api/v1/{String}/{String}"), "GET",
                      (Param("a", "String", "path"), Param("b", "String", "path")))
print("normalized:", normalize_path(call.url))
for ep in (by_id, by_name):
    m = match_signature(call, ep)
    print(f"  {ep.path.render():<28} specificity={m.specificity if m else None}")

# The same rules over the whole fixture.
ir = build_ir(discover_services(MINIMART), base=MINIMART)
r = resolve_calls(ir)
print("\nminimart matches:")
for m in r.matches:
    note = "  (ambiguous)" if m.ambiguous else ""
    print(f"  {m.call.caller:<18} -> {m.endpoint.method} {m.endpoint.display_path}{note}")
print("unmatched:", [c.url_text() for c in r.unmatched])
for d in r.ambiguous:
    print("ambiguity:", d.message)
