from __future__ import annotations

import csv
import io
import json
import xml.etree.ElementTree as ET

from hypothesis import given, settings
from hypothesis import strategies as st

from msdeps.fixtures import generate_ir_system
from msdeps.matrix import DisplayView, hotspots, prune
from msdeps.model import DDM, EDM, SDM, EndpointDef, Lit, Param, PathTemplate, RestCall, SourceLoc, SystemIR, make_services
from msdeps.pipeline import analyze_ir
from msdeps.render import emit_csv, emit_heatmap, emit_hotspots_csv, heatmap_spec, matrix_from_json
from msdeps.render.heatmap import ramp

SVG = "{http://www.w3.org/2000/svg}"


def parse(svg):
    return ET.fromstring(svg.encode("utf-8"))


def groups(root, cls):
    return [g for g in root.iter(f"{SVG}g") if g.get("class") == cls]


def header_texts(root, cls):
    (g,) = groups(root, cls)
    # the ordinal follows the hover title holding the full service name
    return [t.find(f"{SVG}title").tail for t in g.findall(f"{SVG}text")]


# -- heatmap --------------------------------------------------------------------------------


def test_two_by_two_view_with_one_cell():
    sids = make_services(["a", "b"])
    view = DisplayView("edm", sids, sids, {("a", "b"): 2})
    root = parse(emit_heatmap(view))
    assert len(groups(root, "cell")) == 1
    assert header_texts(root, "row-headers") == ["1", "2"]
    assert header_texts(root, "col-headers") == ["1", "2"]
    (cell,) = groups(root, "cell")
    assert cell.find(f"{SVG}text").text == "2"


def test_empty_view_has_headers_only():
    root = parse(emit_heatmap(prune(EDM(make_services(["a", "b"])))))
    assert groups(root, "cell") == []
    assert header_texts(root, "row-headers") == []
    assert root.find(f"{SVG}title").text == "Endpoint Dependency Matrix (EDM)"


def test_legend_maps_ordinals_to_names():
    edm = EDM(make_services(["x-svc", "a-svc", "m-svc"]), {("a-svc", "x-svc"): 1})
    (legend,) = groups(parse(emit_heatmap(prune(edm))), "legend")
    assert [t.text for t in legend.findall(f"{SVG}text")] == ["1: a-svc", "3: x-svc"]


def test_all_tied_longest_rows_and_columns_are_marked():
    sids = make_services("abcd")
    cells = {("a", "c"): 1, ("a", "d"): 1, ("b", "c"): 1, ("b", "d"): 3}
    root = parse(emit_heatmap(prune(EDM(sids, cells))))
    rects = list(root.iter(f"{SVG}rect"))
    assert sum(r.get("class") == "mark-row" for r in rects) == 2
    assert sum(r.get("class") == "mark-col" for r in rects) == 2
    spec = heatmap_spec(prune(EDM(sids, cells)), mark_extremes=False)
    assert not any(r.get("class") == "mark-row" for r in parse(emit_heatmap(None, spec)).iter(f"{SVG}rect"))


def test_sdm_uses_three_class_colors():
    sids = make_services("abc")
    sdm = SDM(sids, {("a", "b"): (4, 1), ("b", "a"): (0, 1), ("c", "a"): (2, 0)})
    root = parse(emit_heatmap(prune(sdm)))
    fills = {}
    for g in groups(root, "cell"):
        fills[g.find(f"{SVG}text").text] = g.find(f"{SVG}rect").get("fill")
    assert fills == {"4.1": "#d62728", "0.1": "#f28e2b", "2": "#3b7dd8"}
    (legend,) = groups(root, "legend")
    assert {"both", "data-only", "endpoints-only"} <= {t.text for t in legend.findall(f"{SVG}text")}


def test_color_overrides_and_ramp():
    sids = make_services("ab")
    view = prune(EDM(sids, {("a", "b"): 5}))
    spec = heatmap_spec(view, colors={"rampHigh": "#000000"})
    (cell,) = groups(parse(emit_heatmap(view, spec)), "cell")
    assert cell.find(f"{SVG}rect").get("fill") == "#000000"
    assert ramp("#ffffff", "#000000", 0.5) == "#808080"


def test_names_are_escaped():
    sids = make_services(["a<b>", "c&d"])
    root = parse(emit_heatmap(prune(EDM(sids, {("a<b>", "c&d"): 1}))))
    assert "a<b> -> c&d: 1" in [t.text for t in root.iter(f"{SVG}title")]


# -- csv --------------------------------------------------------------------------------------


def test_csv_one_by_one():
    sids = make_services("ab")
    text = emit_csv(prune(EDM(sids, {("a", "b"): 2})))
    assert text.splitlines() == [",b", "a,2"]


def test_csv_sdm_and_blank_cells():
    sids = make_services("abc")
    rows = list(csv.reader(io.StringIO(emit_csv(prune(SDM(sids, {("a", "b"): (0, 2), ("a", "c"): (1, 0), ("b", "c"): (3, 4)}))))))
    assert rows == [["", "b", "c"], ["a", "0.2", "1"], ["b", "", "3.4"]]


def test_csv_quotes_commas():
    sids = make_services(["svc,one", "two"])
    text = emit_csv(prune(EDM(sids, {("svc,one", "two"): 1})))
    assert '"svc,one"' in text
    assert list(csv.reader(io.StringIO(text)))[1] == ["svc,one", "1"]


def test_hotspots_csv_header():
    assert emit_hotspots_csv([]).splitlines() == ["service,path,method,calls,distinctCallers"]


# -- json -----------------------------------------------------------------------------------


def two_service_ir():
    path = PathTemplate.parse("/things/{Long}")
    ep = EndpointDef("b", path, "GET", (Param("id", "Long", "path"),), "Thing", SourceLoc("b/T.java", 3))
    call = RestCall("a", (Lit("http://b/things/7"),), "GET", 1, "Thing", SourceLoc("a/C.java", 9))
    return SystemIR.build(["a", "b"], [ep], [call])


def test_json_dependencies_and_dependants():
    doc = json.loads(analyze_ir(two_service_ir()).to_json())
    a, b = doc["services"]["a"], doc["services"]["b"]
    assert [d["target"] for d in a["dependencies"]] == ["b"]
    assert [d["source"] for d in b["dependants"]] == ["a"]
    assert a["dependencies"][0]["endpointCalls"] == [{"path": "/things/{Long}", "method": "GET", "count": 1}]
    assert a["dependants"] == [] and b["dependencies"] == []
    assert doc["matrices"]["edm"]["cells"] == [{"from": "a", "to": "b", "count": 1}]


def test_json_sdm_cell_shape():
    ir, _ = generate_ir_system(5, (3, 6, 10, 0))
    an = analyze_ir(ir)
    sids = an.sdm.services
    an2 = an.__class__(**{**an.__dict__, "sdm": SDM(sids, {(sids[0].name, sids[1].name): (4, 1)})})
    doc = json.loads(an2.to_json())
    (cell,) = doc["matrices"]["sdm"]["cells"]
    assert {k: cell[k] for k in ("endpoint", "data", "display")} == {"endpoint": 4, "data": 1, "display": "4.1"}


def test_json_empty_system():
    doc = json.loads(analyze_ir(SystemIR.build(["lonely"])).to_json())
    assert doc["summary"]["services"] == 1
    assert doc["matrices"]["edm"]["cells"] == [] and doc["contextMap"] == [] and doc["hotspots"] == []


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10_000))
def test_json_deterministic_and_complete(seed):
    ir, _ = generate_ir_system(seed, (6, 20, 40, 10))
    an = analyze_ir(ir)
    text = an.to_json()
    assert text == analyze_ir(ir).to_json()
    doc = json.loads(text)
    for kind, matrix in (("edm", an.edm), ("ddm", an.ddm), ("sdm", an.sdm)):
        assert matrix_from_json(doc, kind) == matrix
        assert len(doc["matrices"][kind]["cells"]) == len(matrix.cells)
        view = prune(matrix)
        svg_cells = groups(parse(emit_heatmap(view)), "cell")
        assert len(svg_cells) == len(view.cells)
        body = list(csv.reader(io.StringIO(emit_csv(view))))[1:]
        assert sum(1 for row in body for v in row[1:] if v) == len(view.cells)
    assert len(doc["hotspots"]) == len(hotspots(an.matches, 3))
