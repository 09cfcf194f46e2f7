#!/usr/bin/env python3
"""End-to-end tour of the strict product: build, analyse, prune, decide.

Combines the two three-valued implication matrices, prints the viability
analysis of the five-valued product, prunes away the spurious values, and
then answers a few consequence queries on both the product and the parts.
"""

from pnmatrix import (
    builtin,
    classify,
    decide_multiple,
    format_matrix,
    parse_formula_list,
    prune,
    strict_product,
    viable_components,
)


def main() -> None:
    weak = builtin("kleene-imp")
    strong = builtin("luk-imp")
    product = strict_product(weak, strong)

    print(f"product kind: {classify(product)}")
    report = viable_components(product)
    print("maximal viable sets:", [sorted(w) for w in report.maximal])
    print("spurious values:    ", sorted(report.spurious))
    print()

    pruned = prune(product)
    print("pruned product:")
    print(format_matrix(pruned))

    queries = [
        ("imp(p, p)", "p, imp(p, q)"),
        ("-", "imp(p, p)"),
        ("p, imp(p, q)", "q"),
        ("-", "imp(p, q), imp(q, p)"),
    ]
    for premises, conclusions in queries:
        gamma = parse_formula_list(premises, product.sig)
        delta = parse_formula_list(conclusions, product.sig)
        v = decide_multiple(product, gamma, delta)
        print(f"{premises:18} |- {conclusions:24} {v.answer}")
        if v.countermodel is not None:
            print("    countermodel:", v.countermodel.pretty())


if __name__ == "__main__":
    main()
