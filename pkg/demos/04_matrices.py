"""Build the three dependency matrices and write them as SVG and CSV.

The endpoint matrix counts calls from row to column. The data matrix counts
entity classes two services share. The merged matrix shows both as "E.D".
Rows and columns with no dependency are pruned before rendering.
"""

import sys
import tempfile
from pathlib import Path

from _paths import MINIMART

from msdeps import RunConfig, analyze_source, prune
from msdeps.render import emit_csv

an = analyze_source(str(MINIMART), RunConfig())
for matrix in (an.edm, an.ddm, an.sdm):
    view = prune(matrix)
    print(f"{matrix.kind.upper()}  rows={[s.ordinal for s in view.rows]} cols={[s.ordinal for s in view.cols]}")
    print(emit_csv(view).replace("\r\n", "\n"))

out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(tempfile.mkdtemp(prefix="msdeps-demo-"))
an.write(out)
print("wrote", ", ".join(sorted(p.name for p in out.iterdir())), "to", out)
