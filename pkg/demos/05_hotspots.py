"""List endpoints that receive many calls.

The threshold is strict: with min_calls=3 only endpoints called four or more
times are listed. minimart is small, so the demo also lowers the threshold.
"""

from _paths import MINIMART

from msdeps import RunConfig, analyze_source, hotspots

an = analyze_source(str(MINIMART), RunConfig())
for threshold in (3, 1, 0):
    rows = hotspots(an.matches, threshold)
    print(f"more than {threshold} calls: {len(rows)} endpoint(s)")
    for r in rows:
        print(f"  {r.call_count} calls from {r.distinct_callers} service(s)  {r.endpoint.method} {r.endpoint.display_path}")
