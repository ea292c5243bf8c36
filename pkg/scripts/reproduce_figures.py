"""Run the three standard sweeps and write fig2/fig3/fig4 CSV files.

fig2: SJNR vs transmitter altitude (300-1200 km) for 9/25/100 elements.
fig3: SJNR vs RIS altitude (10-100 m) for 9/25/100 elements.
fig4: SJNR vs element count (2x2 .. 10x10) at the default geometry.
"""
import argparse
import os
import sys
import time

from risjam import fig2_spec, fig3_spec, fig4_spec, run_sweep, write_sweep_csv


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="figures", help="output directory")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--timing", action="store_true",
                        help="record wall-clock runtime_ms per row")
    args = parser.parse_args(argv)

    os.makedirs(args.outdir, exist_ok=True)
    for name, spec_fn in (("fig2", fig2_spec), ("fig3", fig3_spec), ("fig4", fig4_spec)):
        t0 = time.perf_counter()
        rows = run_sweep(spec_fn(seed=args.seed), timing=args.timing)
        path = os.path.join(args.outdir, f"{name}.csv")
        write_sweep_csv(rows, path)
        elapsed = time.perf_counter() - t0
        bad = sum(1 for r in rows if not r.converged)
        note = "" if bad == 0 else f"  [{bad} non-converged rows]"
        print(f"{name}: {len(rows)} rows -> {path}  ({elapsed:.1f}s){note}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
