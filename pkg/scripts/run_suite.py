#!/usr/bin/env python3
"""Solve a randomized batch of split embedding problems and report timings.

Every certificate is independently re-verified; relative instances that are
invalid by construction must be rejected with the right error.  Exit code is
nonzero if any instance misbehaves.
"""

import argparse
import sys
import time

import surfep as s
from surfep.errors import BetaNRestrictionNotSurjective


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--count", type=int, default=100)
    parser.add_argument(
        "--genus-rule", choices=["exact", "slack"], default="exact"
    )
    parser.add_argument(
        "--action", choices=["trivial", "inversion", "random"], default="random"
    )
    args = parser.parse_args()

    recipe = s.InstanceRecipe(
        seed=args.seed, action_mode=args.action, genus_rule=args.genus_rule
    )
    batch = s.generate_instances(recipe, args.count)

    start = time.monotonic()
    proper = rejected = failed = 0
    for inst in batch:
        t0 = time.monotonic()
        try:
            if inst.relative is None:
                cert = s.solve_gamma_level(inst.ep)
                fresh = s.reverify_certificate(inst.ep, cert)
            else:
                cert = s.solve_relative(inst.ep, inst.relative)
                fresh = s.reverify_certificate(inst.ep, cert, inst.relative)
        except BetaNRestrictionNotSurjective:
            if inst.relative_valid is False:
                rejected += 1
                print(f"{inst.name}: rejected (invalid relative), as expected")
            else:
                failed += 1
                print(f"{inst.name}: UNEXPECTED rejection")
            continue
        dt = time.monotonic() - t0
        ok = cert.outcome == "proper" and fresh.outcome == "proper"
        if ok:
            proper += 1
        else:
            failed += 1
        tag = "proper" if ok else f"BAD ({cert.outcome}/{fresh.outcome})"
        print(
            f"{inst.name}: g={inst.ep.genus} |A|={inst.ep.A.order} "
            f"|B|={inst.ep.B.order} -> {tag} in {dt * 1000:.1f} ms"
        )

    elapsed = time.monotonic() - start
    print(
        f"\n{proper} proper, {rejected} expected rejections, {failed} failures "
        f"out of {args.count} in {elapsed:.2f}s"
    )
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
