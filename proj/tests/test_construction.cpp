#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <regsets/construction.hpp>
#include <regsets/families.hpp>

using namespace regsets;

namespace {

std::vector<std::pair<std::string, std::vector<std::string>>> normal_fixture_list() {
    // (group spec, generators of a nontrivial proper normal subgroup)
    return {
        {"cyclic:6", {"3"}},        {"cyclic:12", {"4"}},     {"dihedral:4", {"r"}},
        {"dihedral:5", {"r"}},      {"dihedral:6", {"r2"}},   {"genq:12", {"x"}},
        {"genq:16", {"x2"}},        {"genq:20", {"x2"}},      {"q8", {"-1"}},
        {"q8", {"i"}},              {"product(cyclic:2,cyclic:4)", {"0.1"}},
        {"product(cyclic:2,cyclic:2)", {"1.0"}},
    };
}

}  // namespace

TEST_CASE("inverse_closed_transversal on the fixtures") {
    SECTION("genq:20 over <x2> yields the canonical S0") {
        const GroupTable g = build_group("genq:20");
        const ElementSet h = parse_subgroup(g, "x2");
        const auto s0 = inverse_closed_transversal(g, h);
        REQUIRE(s0);
        CHECK(s0->m == 1);
        CHECK(s0->elems == std::vector<int>{g.index_of("y"), g.index_of("x5y"), g.index_of("x5")});
        CHECK(validate_ordered_s0(g, h, *s0));
        // the hand-picked set {y, y^-1, x^5} passes the validity checker
        const auto manual = ordered_s0_from_set(g, h, ElementSet::of_names(g, {"y", "x5y", "x5"}));
        REQUIRE(manual);
        CHECK(manual->elems == s0->elems);
    }
    SECTION("q8 over <i> has none") {
        const GroupTable q = build_group("q8");
        CHECK_FALSE(inverse_closed_transversal(q, parse_subgroup(q, "i")));
    }
    SECTION("cyclic:6 over {0,3} picks {1,5} with m=1") {
        const GroupTable c6 = build_group("cyclic:6");
        const auto s0 = inverse_closed_transversal(c6, ElementSet(c6, {0, 3}));
        REQUIRE(s0);
        CHECK(s0->m == 1);
        CHECK(s0->elems == std::vector<int>{1, 5});
    }
    SECTION("preconditions") {
        const GroupTable g = build_group("genq:20");
        CHECK_THROWS_AS(inverse_closed_transversal(g, ElementSet(g, {0})), std::invalid_argument);
        CHECK_THROWS_AS(inverse_closed_transversal(g, ElementSet::full(g)), std::invalid_argument);
        CHECK_THROWS_AS(inverse_closed_transversal(g, parse_subgroup(g, "y")),
                        std::invalid_argument);  // not normal
    }
}

TEST_CASE("transversal existence matches condition (1) on many subgroups") {
    for (const auto& spec : {"cyclic:12", "dihedral:6", "genq:16", "genq:24", "q8",
                             "product(cyclic:2,cyclic:6)", "product(cyclic:4,cyclic:4)"}) {
        const GroupTable g = build_group(spec);
        INFO(spec);
        for (const ElementSet& h : all_subgroups(g)) {
            if (h.size() <= 1 || h.is_full() || !is_normal(g, h)) continue;
            const auto s0 = inverse_closed_transversal(g, h);
            REQUIRE(s0.has_value() == condition1_holds(g, h));
            if (s0) {
                CHECK(validate_ordered_s0(g, h, *s0));
                // S0 + {e} really is a perfect-code connection set for H
                ElementSet s(g, s0->elems);
                const auto cert = check_subgroup_regular(g, make_connection_set(g, s), h);
                REQUIRE(cert);
                CHECK(cert->a == 0);
                CHECK(cert->b == 1);
            }
        }
    }
}

TEST_CASE("decompose_coset fixtures") {
    SECTION("genq:20, coset x5*H") {
        const GroupTable g = build_group("genq:20");
        const auto d = decompose_coset(g, parse_subgroup(g, "x2"), g.index_of("x5"));
        CHECK(d.coset_rep == g.index_of("x5"));
        CHECK(d.alpha == 2);
        CHECK(d.beta == 1);
        CHECK(d.v_involutions == std::vector<int>{g.index_of("x5")});
        CHECK(d.u_pairs == std::vector<std::pair<int, int>>{
                               {g.index_of("x"), g.index_of("x9")},
                               {g.index_of("x3"), g.index_of("x7")}});
    }
    SECTION("non-involution representative is rejected") {
        const GroupTable q = build_group("q8");
        CHECK_THROWS_WITH(decompose_coset(q, ElementSet::of_names(q, {"1", "-1"}), q.index_of("j")),
                          Catch::Matchers::ContainsSubstring("involution"));
    }
    SECTION("dihedral:5 reflection coset is all involutions") {
        const GroupTable g = build_group("dihedral:5");
        const auto d = decompose_coset(g, parse_subgroup(g, "r"), g.index_of("f"));
        CHECK(d.alpha == 0);
        CHECK(d.beta == 5);
        CHECK(d.v_involutions ==
              std::vector<int>{g.index_of("f"), g.index_of("rf"), g.index_of("r2f"),
                               g.index_of("r3f"), g.index_of("r4f")});
    }
    SECTION("2*alpha + beta = |H| and coset membership") {
        const GroupTable g = build_group("product(cyclic:2,cyclic:8)");
        const ElementSet h = parse_subgroup(g, "0.1");
        const int rep = g.index_of("1.0");
        const auto d = decompose_coset(g, h, rep);
        CHECK(d.alpha == 3);
        CHECK(d.beta == 2);
        CHECK(2 * d.alpha + d.beta == h.size());
        ElementSet coset(g);
        for (int a : h.elements()) coset.add(g.mul(rep, a));
        for (const auto& [u, ui] : d.u_pairs) {
            CHECK(coset.contains(u));
            CHECK(coset.contains(ui));
            CHECK(element_order(g, u) > 2);
        }
        for (int v : d.v_involutions) CHECK(coset.contains(v));
    }
}

TEST_CASE("construct_connection_set reproduces the order-20 example exactly") {
    const GroupTable g = build_group("genq:20");
    const ElementSet h = parse_subgroup(g, "x2");
    const ElementSet k = ElementSet::of_names(g, {"x2", "x8"});
    const auto s0 = inverse_closed_transversal(g, h);
    REQUIRE(s0);
    const ConstructionTrace trace = construct_connection_set(g, h, k, 3, *s0);

    REQUIRE(trace.s_blocks.size() == 3);
    CHECK(trace.s_blocks[0] == ElementSet::of_names(g, {"y", "x5y"}));
    CHECK(trace.s_blocks[1] == ElementSet::of_names(g, {"x8y", "x3y"}));
    CHECK(trace.s_blocks[2] == ElementSet::of_names(g, {"x6y", "xy"}));
    REQUIRE(trace.t_blocks.size() == 1);
    CHECK(trace.t_blocks[0] == ElementSet::of_names(g, {"x", "x9", "x5"}));
    CHECK(trace.result.elems() ==
          ElementSet::of_names(g, {"x2", "x8", "y", "x5y", "x8y", "x3y", "x6y", "xy", "x", "x9",
                                   "x5"}));
    CHECK(trace.result.size() == 11);

    const auto cert = check_subgroup_regular(g, trace.result, h);
    REQUIRE(cert);
    CHECK(cert->a == 2);
    CHECK(cert->b == 3);
}

TEST_CASE("construct_connection_set edge cases") {
    const GroupTable g = build_group("genq:20");
    const ElementSet h = parse_subgroup(g, "x2");
    const auto s0 = inverse_closed_transversal(g, h);
    REQUIRE(s0);
    SECTION("K empty, b = 0 gives the empty set") {
        const ConstructionTrace trace = construct_connection_set(g, h, ElementSet(g), 0, *s0);
        CHECK(trace.result.size() == 0);
        const auto cert = check_subgroup_regular(g, trace.result, h);
        REQUIRE(cert);
        CHECK(cert->a == 0);
        CHECK(cert->b == 0);
    }
    SECTION("cyclic:6 perfect code via K empty, b = 1") {
        const GroupTable c6 = build_group("cyclic:6");
        const ElementSet h6(c6, {0, 3});
        const auto s06 = inverse_closed_transversal(c6, h6);
        REQUIRE(s06);
        const ConstructionTrace trace = construct_connection_set(c6, h6, ElementSet(c6), 1, *s06);
        CHECK(trace.result.elems() == ElementSet(c6, {1, 5}));
        const auto cert = check_regular_set(CayleyGraph(c6, trace.result), h6);
        REQUIRE(cert);
        CHECK(cert->a == 0);
        CHECK(cert->b == 1);
    }
    SECTION("input validation") {
        CHECK_THROWS_AS(construct_connection_set(g, h, ElementSet::of_names(g, {"x2"}), 3, *s0),
                        std::invalid_argument);  // K not inverse-closed
        CHECK_THROWS_AS(construct_connection_set(g, h, ElementSet::of_names(g, {"y", "x5y"}), 3, *s0),
                        std::invalid_argument);  // K outside H
        CHECK_THROWS_AS(construct_connection_set(g, h, ElementSet(g), 6, *s0),
                        std::invalid_argument);  // b > |H|
        OrderedS0 bad = *s0;
        bad.elems[0] = g.index_of("x");  // no longer a transversal
        CHECK_THROWS_AS(construct_connection_set(g, h, ElementSet(g), 1, bad),
                        std::invalid_argument);
        CHECK_THROWS_AS(
            construct_connection_set(g, h, ElementSet(g), 1, *s0, {0, 2, 4, 6, 6}),
            std::invalid_argument);  // H ordering not a permutation
    }
}

TEST_CASE("construction block laws hold across a sweep") {
    std::mt19937 rng(123);
    for (const auto& [spec, gens] : normal_fixture_list()) {
        const GroupTable g = build_group(spec);
        ElementSet gen_set(g);
        for (const auto& nm : gens) gen_set.add(g.index_of(nm));
        const ElementSet h = generate_subgroup(g, gen_set);
        if (!is_normal(g, h) || h.size() <= 1 || h.is_full()) continue;
        const auto s0 = inverse_closed_transversal(g, h);
        if (!s0) continue;
        const int d = h.size();
        for (int b = 0; b <= d; ++b) {
            for (int a : {0, 2, d - 1}) {
                if (a < 0 || a > d - 1) continue;
                const auto k = canonical_inverse_closed_subset(g, h, a);
                if (!k) continue;
                const ConstructionTrace trace = construct_connection_set(g, h, *k, b, *s0);
                INFO(spec << " a=" << a << " b=" << b);
                // (a) |S_i| = 2m, (b) |T_j| = b
                for (const auto& blk : trace.s_blocks) REQUIRE(blk.size() == 2 * s0->m);
                for (const auto& blk : trace.t_blocks) REQUIRE(blk.size() == b);
                // (c) disjoint union
                int total = trace.k.size();
                for (const auto& blk : trace.s_blocks) total += blk.size();
                for (const auto& blk : trace.t_blocks) total += blk.size();
                REQUIRE(trace.result.size() == total);
                // (d) inverse-closed, identity-free
                REQUIRE(is_inverse_closed(g, trace.result.elems()));
                REQUIRE_FALSE(trace.result.contains(0));
                // (e) certified (|K|, b) by the independent certifier
                const auto cert = check_regular_set(CayleyGraph(g, trace.result), h);
                REQUIRE(cert);
                REQUIRE(cert->a == static_cast<int>(k->size()));
                REQUIRE(cert->b == b);
            }
        }
    }
}

TEST_CASE("ordering robustness: any H-order and any valid S0 certify (|K|, b)") {
    std::mt19937 rng(421);
    for (const auto& spec : {"genq:16", "cyclic:12", "dihedral:6", "product(cyclic:2,cyclic:6)"}) {
        const GroupTable g = build_group(spec);
        for (const ElementSet& h : all_subgroups(g)) {
            if (h.size() <= 1 || h.is_full() || !is_normal(g, h)) continue;
            const auto s0_canonical = inverse_closed_transversal(g, h);
            if (!s0_canonical) continue;
            const int d = h.size();
            const CosetPartition cosets = left_cosets(g, h);
            for (int trial = 0; trial < 25; ++trial) {
                // random valid transversal choice
                ElementSet chosen(g);
                bool ok = true;
                std::vector<char> done(cosets.count(), 0);
                for (int ci = 1; ci < cosets.count() && ok; ++ci) {
                    if (done[ci]) continue;
                    done[ci] = 1;
                    const std::vector<int> members = cosets.cosets[ci].elements();
                    const int cj = cosets.coset_of[g.inv(cosets.representative[ci])];
                    if (cj != ci) {
                        done[cj] = 1;
                        const int x = members[rng() % members.size()];
                        chosen.add(x);
                        chosen.add(g.inv(x));
                    } else {
                        std::vector<int> invs;
                        for (int x : members)
                            if (is_involution(g, x)) invs.push_back(x);
                        if (invs.empty()) { ok = false; break; }
                        chosen.add(invs[rng() % invs.size()]);
                    }
                }
                REQUIRE(ok);  // condition (1) held, so every self-inverse coset has an involution
                const auto s0 = ordered_s0_from_set(g, h, chosen);
                REQUIRE(s0);
                // random H ordering
                std::vector<int> h_order = h.elements();
                std::shuffle(h_order.begin(), h_order.end(), rng);
                const int a = static_cast<int>(rng() % d) & ~(d % 2 ? 1 : 0);
                const int b = static_cast<int>(rng() % (d + 1));
                const auto k = canonical_inverse_closed_subset(g, h, a);
                REQUIRE(k);
                const ConstructionTrace trace = construct_connection_set(g, h, *k, b, *s0, h_order);
                const auto cert = check_regular_set(CayleyGraph(g, trace.result), h);
                REQUIRE(cert);
                REQUIRE(cert->a == a);
                REQUIRE(cert->b == b);
            }
        }
    }
}

TEST_CASE("regular_set_connection fixtures") {
    SECTION("genq:20 (2,3)") {
        const GroupTable g = build_group("genq:20");
        const auto trace = regular_set_connection(g, parse_subgroup(g, "x2"), 2, 3);
        REQUIRE(trace);
        const auto cert = check_subgroup_regular(g, trace->result, parse_subgroup(g, "x2"));
        REQUIRE(cert);
        CHECK(cert->a == 2);
        CHECK(cert->b == 3);
    }
    SECTION("q8 (0,1) infeasible") {
        const GroupTable q = build_group("q8");
        CHECK_FALSE(regular_set_connection(q, parse_subgroup(q, "i"), 0, 1));
    }
    SECTION("cyclic:6 (1,1) is a total perfect code {1,3,5}") {
        const GroupTable c6 = build_group("cyclic:6");
        const auto trace = regular_set_connection(c6, ElementSet(c6, {0, 3}), 1, 1);
        REQUIRE(trace);
        CHECK(trace->result.elems() == ElementSet(c6, {1, 3, 5}));
        CHECK(is_total_perfect_code(CayleyGraph(c6, trace->result), ElementSet(c6, {0, 3})));
    }
    SECTION("odd |H| rejects odd a") {
        const GroupTable c9 = build_group("cyclic:9");
        CHECK_FALSE(regular_set_connection(c9, ElementSet(c9, {0, 3, 6}), 1, 1));
        CHECK(regular_set_connection(c9, ElementSet(c9, {0, 3, 6}), 2, 1));
    }
    SECTION("range validation") {
        const GroupTable g = build_group("genq:20");
        const ElementSet h = parse_subgroup(g, "x2");
        CHECK_THROWS_AS(regular_set_connection(g, h, 5, 0), std::invalid_argument);  // a > |H|-1
        CHECK_THROWS_AS(regular_set_connection(g, h, 0, 6), std::invalid_argument);  // b > |H|
        CHECK_THROWS_AS(regular_set_connection(g, h, -1, 0), std::invalid_argument);
    }
}

TEST_CASE("canonical K covers involution-rich subgroups") {
    // Z2 x Z2 has no non-involution pairs at all
    const GroupTable g = build_group("product(cyclic:2,cyclic:2)");
    const ElementSet h = ElementSet::full(g);
    for (int a = 0; a <= 3; ++a) {
        const auto k = canonical_inverse_closed_subset(g, h, a);
        REQUIRE(k);
        CHECK(k->size() == a);
        CHECK(is_inverse_closed(g, *k));
        CHECK_FALSE(k->contains(0));
    }
    CHECK_FALSE(canonical_inverse_closed_subset(g, h, 4));  // larger than |H|-1
}

TEST_CASE("complement transforms") {
    const GroupTable g = build_group("genq:20");
    const ElementSet h = parse_subgroup(g, "x2");
    const ElementSet s_elems = ElementSet::of_names(
        g, {"x2", "x8", "y", "x5y", "x8y", "x3y", "x6y", "xy", "x", "x9", "x5"});
    const ConnectionSet s = make_connection_set(g, s_elems);

    SECTION("to full: (2,3) becomes (2,|H|) with |S'| = 17") {
        const ConnectionSet full = complement_to_full(g, s, h);
        CHECK(full.size() == 17);
        const auto cert = check_subgroup_regular(g, full, h);
        REQUIRE(cert);
        CHECK(cert->a == 2);
        CHECK(cert->b == 5);
    }
    SECTION("outside: (2,3) becomes (2,|H|-3) with |S'| = 8") {
        const ConnectionSet outside = complement_outside(g, s, h);
        CHECK(outside.size() == 8);
        const auto cert = check_subgroup_regular(g, outside, h);
        REQUIRE(cert);
        CHECK(cert->a == 2);
        CHECK(cert->b == 2);
    }
    SECTION("q8 examples") {
        const GroupTable q = build_group("q8");
        const ElementSet hq = parse_subgroup(q, "i");
        const ConnectionSet jj = make_connection_set(q, ElementSet::of_names(q, {"j", "-j"}));
        const ConnectionSet full = complement_to_full(q, jj, hq);
        CHECK(full.elems() == ElementSet::of_names(q, {"j", "-j", "k", "-k"}));
        const auto cert_full = check_subgroup_regular(q, full, hq);
        REQUIRE(cert_full);
        CHECK(cert_full->a == 0);
        CHECK(cert_full->b == 4);

        const ConnectionSet s1 = make_connection_set(q, ElementSet::of_names(q, {"-1", "j", "-j"}));
        const ConnectionSet out = complement_outside(q, s1, hq);
        CHECK(out.elems() == ElementSet::of_names(q, {"-1", "k", "-k"}));
        const auto cert_out = check_subgroup_regular(q, out, hq);
        REQUIRE(cert_out);
        CHECK(cert_out->a == 1);
        CHECK(cert_out->b == 2);
    }
    SECTION("to full is a fixed point when S already covers G\\H") {
        const GroupTable q = build_group("q8");
        const ElementSet hq = parse_subgroup(q, "i");
        const ConnectionSet s2 =
            make_connection_set(q, ElementSet::of_names(q, {"-1", "j", "-j", "k", "-k"}));
        CHECK(complement_to_full(q, s2, hq).elems() == s2.elems());
    }
    SECTION("outside is an involution") {
        CHECK(complement_outside(g, complement_outside(g, s, h), h).elems() == s.elems());
    }
    SECTION("uncertified S is an error") {
        const GroupTable c8 = build_group("cyclic:8");
        const ConnectionSet bad = make_connection_set(c8, ElementSet(c8, {1, 2, 6, 7}));
        REQUIRE_FALSE(check_subgroup_regular(c8, bad, ElementSet(c8, {0, 4})));
        CHECK_THROWS_AS(complement_to_full(c8, bad, ElementSet(c8, {0, 4})),
                        std::invalid_argument);
        CHECK_THROWS_AS(complement_outside(c8, bad, ElementSet(c8, {0, 4})),
                        std::invalid_argument);
    }
}
