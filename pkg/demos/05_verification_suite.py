"""Run the full verification suite and print a one-line digest per check.

Every check is a pure function of its seed, so the whole run is exactly
reproducible.  The two kind IV factor-adjudication checks fail by design:
the measured transformation constant is 4, which is outside the offered
candidate set {1, -1/2}; their notes record the evidence.
"""

import time

from bsdkit import run_all, summarize

start = time.perf_counter()
reports = run_all(seed=42)
elapsed = time.perf_counter() - start

for report in reports:
    flag = "ok " if report.passed else "FAIL"
    print(f"[{flag}] {report.check_id:45s} residual {report.max_residual:9.2e} "
          f"(tol {report.tolerance:7.1e}, n={report.samples})")
    if not report.passed:
        for note in report.notes:
            print(f"       note: {note}")

print(f"\nsummary: {summarize(reports)} in {elapsed:.1f}s")
