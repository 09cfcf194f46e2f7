#!/usr/bin/env python3
"""Survey the builtin fixtures for saturation counterexamples and monadicity.

For every fixture this prints its classification, whether the bounded
refuter finds a witness against saturation (and which one), and whether a
full separator table exists within the default depth bound.
"""

from pnmatrix import (
    builtin,
    classify,
    fixture_names,
    monadicity_report,
    refute_saturation,
)


def main() -> None:
    for name in fixture_names():
        m = builtin(name)
        r = refute_saturation(m)
        t = monadicity_report(m)
        sat = f"refuted ({r.witness.pretty()})" if r.refuted else "no witness found"
        print(f"{name:12} {classify(m):9} "
              f"monadic={'yes' if t.monadic else 'not shown'}   saturation: {sat}")


if __name__ == "__main__":
    main()
