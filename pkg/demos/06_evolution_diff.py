"""Compare two versions of a system.

minimart-v2 adds one call from the user service to the catalog and drops the
order service's copy of Product. Each matrix diff reports added, removed and
changed cells. The CLI form is ``msdeps diff OLD NEW --kind sdm``, which
exits with 3 when anything changed.
"""

from _paths import MINIMART, MINIMART_V2

from msdeps import RunConfig, analyze_source, diff
from msdeps.cli import format_diff

old = analyze_source(str(MINIMART), RunConfig())
new = analyze_source(str(MINIMART_V2), RunConfig())
for kind in ("edm", "ddm", "sdm"):
    print(format_diff(diff(getattr(old, kind), getattr(new, kind))))
    print()
