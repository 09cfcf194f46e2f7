#!/usr/bin/env python3
"""Ask whether a matrix can be split into two reducts without losing theorems.

Runs the split advisor on the three-valued matrix with a possibility
operator, for two different ways of dividing its connectives, and prints
the evidence behind each verdict.
"""

from pnmatrix import Signature, builtin, split_advice


def sub_sig(m, names):
    return Signature.of({c: m.sig.arity(c) for c in names})


def advise(m, first, second):
    sv = split_advice(m, sub_sig(m, first), sub_sig(m, second))
    print(f"split {{{', '.join(first)}}} / {{{', '.join(second)}}}")
    print(f"  verdict: {sv.verdict}")
    print(f"  monadic: {sv.separators.monadic}   "
          f"saturation refuted: {sv.saturation.refuted}   "
          f"samples: {sv.samples_run}")
    for d in sv.divergences:
        print(f"  divergence: {d.pretty()}")
        if d.product_verdict.countermodel is not None:
            print("    product countermodel:", d.product_verdict.countermodel.pretty())
    print()


def main() -> None:
    luk = builtin("luk3")
    advise(luk, ("neg", "imp"), ("nabla",))
    advise(luk, ("neg", "imp"), ("nabla", "imp"))

    ks = builtin("kleene-ks")
    advise(ks, ("and", "neg"), ("or", "neg"))


if __name__ == "__main__":
    main()
