from pnmatrix import (
    RefutationBounds,
    SeparatorBounds,
    Signature,
    builtin,
    check_saturation_witness,
    decide_multiple,
    find_separator,
    formula_pool,
    monadicity_report,
    one_variable_formulas,
    print_formula,
    reduct,
    refute_saturation,
    split_advice,
)


def sub_sig(m, names):
    return Signature.of({c: m.sig.arity(c) for c in names})


class TestEnumeration:
    def test_size_order_and_cap(self):
        sig = Signature.of({"neg": 1})
        fs = one_variable_formulas(sig, max_depth=3)
        assert [print_formula(f) for f in fs] == [
            "p",
            "neg(p)",
            "neg(neg(p))",
            "neg(neg(neg(p)))",
        ]
        assert len(one_variable_formulas(sig, max_depth=3, cap=2)) == 2

    def test_pool_respects_variables_and_depth(self):
        sig = builtin("bool2").sig
        pool = formula_pool(sig, ("p", "q"), max_depth=1, cap=100)
        names = {print_formula(f) for f in pool}
        assert {"p", "q", "top", "neg(p)", "and(p, q)"} <= names
        assert "neg(neg(p))" not in names


class TestSeparators:
    def test_two_valued_matrix_separated_by_variable_alone(self):
        m = builtin("bool2")
        assert print_formula(find_separator(m, "0", "1")) == "p"

    def test_ks_pairs(self):
        table = monadicity_report(builtin("kleene-ks"))
        assert table.monadic
        assert print_formula(table.separator("b", "1")) == "neg(p)"
        assert print_formula(table.separator("0", "b")) == "p"

    def test_depth_bound_matters(self):
        luk = builtin("luk3")
        imp_only = reduct(luk, sub_sig(luk, ["imp"]))
        assert find_separator(imp_only, "0", "h", SeparatorBounds(max_depth=4)) is None
        # with the possibility operator available the pair separates at depth 1
        assert print_formula(find_separator(luk, "0", "h")) == "nabla(p)"


class TestRefuter:
    def test_found_witnesses_are_valid(self):
        for name in ("bool2n", "kleene-imp", "luk-imp", "kleene-ks"):
            m = builtin(name)
            r = refute_saturation(m)
            assert r.refuted, name
            assert check_saturation_witness(m, r.witness) == [], name

    def test_saturated_fixtures_survive(self):
        for name in ("neg3", "sources"):
            r = refute_saturation(builtin(name))
            assert not r.refuted
            assert r.witness is None

    def test_bounds_are_honored(self):
        tight = RefutationBounds(max_pool=3, max_premises=1, max_phi=1)
        r = refute_saturation(builtin("kleene-imp"), tight)
        assert not r.refuted  # the witness needs two conclusions
        assert r.bounds == tight


class TestSplitAdvice:
    def test_shared_negation_split_is_safe(self):
        ks = builtin("kleene-ks")
        sv = split_advice(ks, sub_sig(ks, ["and", "neg"]), sub_sig(ks, ["or", "neg"]))
        assert sv.verdict == "split-safe-multiple"
        assert sv.separators.monadic and sv.saturation.refuted

    def test_divergences_mean_matrix_yes_product_no(self):
        luk = builtin("luk3")
        sv = split_advice(luk, sub_sig(luk, ["neg", "imp"]), sub_sig(luk, ["nabla"]))
        assert sv.verdict == "unsafe-evidence"
        for d in sv.divergences:
            assert d.matrix_verdict.answer == "yes"
            assert d.product_verdict.answer == "no"
            assert d.product_verdict.countermodel is not None

    def test_saturated_and_monadic_allows_single_split(self):
        s = builtin("sources")
        sv = split_advice(s, sub_sig(s, ["and", "neg"]), sub_sig(s, ["or", "neg"]))
        assert sv.verdict == "split-safe-single-conditional"
        assert sv.divergences == ()

    def test_divergence_queries_really_differ(self):
        luk = builtin("luk3")
        sv = split_advice(luk, sub_sig(luk, ["neg", "imp"]), sub_sig(luk, ["nabla"]))
        d = sv.divergences[0]
        assert decide_multiple(luk, [d.premise], [d.conclusion]).answer == "yes"
