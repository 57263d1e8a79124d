"""Use the intermediate representation as an exchange format.

The IR holds services, endpoints, calls and entities as plain JSON. Any
frontend that writes it can feed the rest of the pipeline. Here a small
system is written by hand, validated and analyzed.
"""

import json
import tempfile
from pathlib import Path

from msdeps import analyze_ir, load_ir
from msdeps.errors import IRValidationError
from msdeps.ir import from_dict

doc = {
    "services": ["gateway", "inventory", "pricing"],
    "endpoints": [
        {"service": "inventory", "path": "/stock/{String}", "method": "GET",
         "params": [{"name": "sku", "declaredType": "String", "kind": "path"}]},
        {"service": "pricing", "path": "/prices", "method": "POST", "params": []},
    ],
    "calls": [
        {"caller": "gateway", "url": [{"lit": "http://inventory/stock/"}, {"hole": "String"}], "method": "GET"},
        {"caller": "gateway", "url": [{"lit": "http://pricing/prices"}], "method": "POST"},
        {"caller": "inventory", "url": [{"lit": "http://pricing/prices"}], "method": "POST"},
    ],
    "entities": [
        {"service": "inventory", "name": "Item", "kind": "persistent",
         "fields": [{"name": "sku", "typeName": "String"}]},
        {"service": "pricing", "name": "Item", "kind": "dto",
         "fields": [{"name": "sku", "typeName": "String"}]},
    ],
}
path = Path(tempfile.mkdtemp(prefix="msdeps-ir-")) / "ir.json"
path.write_text(json.dumps(doc), encoding="utf-8")

an = analyze_ir(load_ir(path))
print("summary:", an.summary())
print("EDM:", dict(an.edm.cells))
print("SDM:", {k: v.display for k, v in an.sdm.cells.items()})

# Broken documents point at the first offending field.
doc["calls"][0]["caller"] = "billing"
try:
    from_dict(doc)
except IRValidationError as exc:
    print("rejected:", exc)
