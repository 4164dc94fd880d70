"""Exhaustive near-modular set search over a grid of bounds.

For each ell, walks max_element over the plausible range and prints every
near-modular set of size 2**(ell+1) mod 3**(ell+1) found, flagging the
ones from the built-in table.  The known sets end at 2*3**ell (A side)
and 4*3**ell (B side); anything else the search turns up is a candidate
for extending the table.

Usage:
    python scripts/family_search.py --ell 1 2 --workers 4
"""

import argparse

from stanley import family_set, search_near_modular


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ell", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--max-element", type=int, default=None,
                    help="single bound; default sweeps up to 4*3**ell")
    ap.add_argument("--budget", type=int, default=10**8)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    for ell in args.ell:
        known = {family_set(ell, side) for side in ("A", "B")} if ell <= 4 else set()
        bounds = [args.max_element] if args.max_element else \
            list(range(2 ** (ell + 1) - 1, 4 * 3**ell + 1))
        total = 0
        for bound in bounds:
            found = search_near_modular(ell, bound, budget=args.budget,
                                        workers=args.workers)
            for s in found:
                tag = " [table]" if s.elements in known else ""
                print(f"ell={ell} max={bound}: {' '.join(map(str, s.elements))}{tag}")
            total += len(found)
        print(f"# ell={ell}: {total} sets")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
