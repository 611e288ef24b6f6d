#pragma once

#include "regular.hpp"

namespace regsets {

/// Ordered connection set S0 = (s_1,...,s_n) for which S0 + {e} is an
/// inverse-closed left transversal of a subgroup: the first 2m entries are
/// inverse pairs mirrored around the middle (s_i^{-1} = s_{2m+1-i}, 1-based),
/// the remaining entries are involutions.
struct OrderedS0 {
    std::vector<int> elems;
    int m = 0;

    int pair_count() const { return m; }
    int involution_count() const { return static_cast<int>(elems.size()) - 2 * m; }
};

namespace detail {

inline void require_nontrivial_proper_normal(const GroupTable& g, const ElementSet& h,
                                             const char* what) {
    require_subgroup(g, h, what);
    if (h.size() <= 1)
        throw std::invalid_argument(std::string(what) + ": subgroup is trivial");
    if (h.is_full())
        throw std::invalid_argument(std::string(what) + ": subgroup is the whole group");
    if (!is_normal(g, h))
        throw std::invalid_argument(std::string(what) + ": subgroup is not normal");
}

}  // namespace detail

/// Full validity check for an OrderedS0 against (G,H): index structure,
/// inverse pairing, involution tail, and the transversal property.
inline bool validate_ordered_s0(const GroupTable& g, const ElementSet& h, const OrderedS0& s0,
                                std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int n = static_cast<int>(s0.elems.size());
    if (s0.m < 0 || 2 * s0.m > n) return fail("pair count m out of range");
    std::vector<char> used(g.order(), 0);
    for (int x : s0.elems) {
        if (x <= 0 || x >= g.order()) return fail("element index out of range or identity");
        if (used[x]++) return fail("repeated element " + g.name(x));
    }
    for (int i = 0; i < s0.m; ++i) {
        const int x = s0.elems[i], y = s0.elems[2 * s0.m - 1 - i];
        if (g.inv(x) != y) return fail("positions " + std::to_string(i + 1) + " and " +
                                       std::to_string(2 * s0.m - i) + " are not mutual inverses");
    }
    for (int j = 2 * s0.m; j < n; ++j)
        if (!is_involution(g, s0.elems[j]))
            return fail("tail element " + g.name(s0.elems[j]) + " is not an involution");
    // transversal: exactly one element per nonidentity left coset, none in H
    const CosetPartition cosets = left_cosets(g, h);
    if (n != cosets.count() - 1) return fail("size does not match the coset count");
    std::vector<char> hit(cosets.count(), 0);
    for (int x : s0.elems) {
        const int ci = cosets.coset_of[x];
        if (ci == cosets.coset_of[0]) return fail("element " + g.name(x) + " lies in H");
        if (hit[ci]++) return fail("two elements in the coset of " + g.name(x));
    }
    return true;
}

/// Canonically order a raw transversal set: non-involutions paired with their
/// inverses (ascending by least element, inverse mirrored), involutions last
/// in ascending order. Returns nullopt if the set is not a valid S0 for (G,H).
inline std::optional<OrderedS0> ordered_s0_from_set(const GroupTable& g, const ElementSet& h,
                                                    const ElementSet& set) {
    std::vector<int> fronts, involutions;
    std::vector<char> used(g.order(), 0);
    for (int x : set.elements()) {
        if (used[x]) continue;
        used[x] = 1;
        if (is_involution(g, x)) {
            involutions.push_back(x);
        } else {
            const int y = g.inv(x);
            if (x == 0 || !set.contains(y)) return std::nullopt;
            used[y] = 1;
            fronts.push_back(x);
        }
    }
    OrderedS0 s0;
    s0.m = static_cast<int>(fronts.size());
    s0.elems = fronts;
    s0.elems.resize(2 * s0.m);
    for (int i = 0; i < s0.m; ++i) s0.elems[2 * s0.m - 1 - i] = g.inv(fronts[i]);
    s0.elems.insert(s0.elems.end(), involutions.begin(), involutions.end());
    if (!validate_ordered_s0(g, h, s0)) return std::nullopt;
    return s0;
}

/// Build the canonical inverse-closed left transversal (minus e) of a
/// nontrivial proper normal subgroup, or nullopt when none exists.
///
/// Cosets are paired with their inverse cosets; a paired coset contributes the
/// least element of the lexicographically smaller coset together with its
/// inverse, a self-inverse coset contributes its least involution and fails
/// the whole search when it has none.
inline std::optional<OrderedS0> inverse_closed_transversal(const GroupTable& g,
                                                           const ElementSet& h) {
    detail::require_nontrivial_proper_normal(g, h, "inverse_closed_transversal");
    const CosetPartition cosets = left_cosets(g, h);
    std::vector<char> done(cosets.count(), 0);
    std::vector<int> fronts, involutions;
    for (int ci = 1; ci < cosets.count(); ++ci) {
        if (done[ci]) continue;
        done[ci] = 1;
        const int rep = cosets.representative[ci];
        const int cj = cosets.coset_of[g.inv(rep)];
        if (cj != ci) {
            // mutually inverse pair of cosets; ci is the smaller since we scan upward
            done[cj] = 1;
            fronts.push_back(rep);
        } else {
            int inv_found = -1;
            for (int x : cosets.cosets[ci].elements())
                if (is_involution(g, x)) { inv_found = x; break; }
            if (inv_found < 0) return std::nullopt;
            involutions.push_back(inv_found);
        }
    }
    OrderedS0 s0;
    s0.m = static_cast<int>(fronts.size());
    s0.elems = fronts;
    s0.elems.resize(2 * s0.m);
    for (int i = 0; i < s0.m; ++i) s0.elems[2 * s0.m - 1 - i] = g.inv(fronts[i]);
    s0.elems.insert(s0.elems.end(), involutions.begin(), involutions.end());
    return s0;
}

/// Deterministic split of the coset s_j H of an involution representative into
/// inverse pairs of elements of order > 2 and the involutions, rep first.
struct CosetDecomposition {
    int coset_rep = -1;
    std::vector<std::pair<int, int>> u_pairs;  // (u, u^{-1}), ascending by u
    std::vector<int> v_involutions;            // rep first, then ascending
    int alpha = 0;
    int beta = 0;
};

inline CosetDecomposition decompose_coset(const GroupTable& g, const ElementSet& h, int rep) {
    require_subgroup(g, h, "decompose_coset");
    if (!is_involution(g, rep))
        throw std::invalid_argument("decompose_coset: representative '" + g.name(rep) +
                                    "' is not an involution");
    if (h.contains(rep))
        throw std::invalid_argument("decompose_coset: representative lies in the subgroup");

    ElementSet coset(g);
    for (int a : h.elements()) coset.add(g.mul(rep, a));
    for (int x : coset.elements())
        if (!coset.contains(g.inv(x)))
            throw std::invalid_argument(
                "decompose_coset: coset is not inverse-closed (subgroup not normal)");

    CosetDecomposition d;
    d.coset_rep = rep;
    d.v_involutions.push_back(rep);
    std::vector<char> used(g.order(), 0);
    used[rep] = 1;
    for (int x : coset.elements()) {
        if (used[x]) continue;
        if (is_involution(g, x)) {
            d.v_involutions.push_back(x);
            used[x] = 1;
        } else {
            d.u_pairs.emplace_back(x, g.inv(x));
            used[x] = used[g.inv(x)] = 1;
        }
    }
    d.alpha = static_cast<int>(d.u_pairs.size());
    d.beta = static_cast<int>(d.v_involutions.size());
    if (2 * d.alpha + d.beta != h.size())
        throw std::logic_error("decompose_coset: 2*alpha + beta != |H|");
    return d;
}

/// Everything produced while assembling a connection set from (K, b, S0):
/// the subgroup ordering, the per-coset decompositions, and all blocks.
struct ConstructionTrace {
    std::vector<int> h_order;
    OrderedS0 s0;
    int b = 0;
    ElementSet k;
    std::vector<ElementSet> s_blocks;
    std::vector<ElementSet> t_blocks;
    std::vector<CosetDecomposition> coset_decomps;  // one per involution in S0
    ConnectionSet result;
};

/// Assemble S = K u (S_1 u ... u S_b) u (T_{2m+1} u ... u T_n) from an
/// inverse-closed K inside H, a target b, and a valid S0.
/// The subgroup ordering defaults to identity-first then ascending index.
inline ConstructionTrace construct_connection_set(const GroupTable& g, const ElementSet& h,
                                                  const ElementSet& k, int b, const OrderedS0& s0,
                                                  std::vector<int> h_order = {}) {
    detail::require_nontrivial_proper_normal(g, h, "construct_connection_set");
    const int d = h.size();
    if (b < 0 || b > d)
        throw std::invalid_argument("construct_connection_set: b out of range [0, |H|]");
    if (k.contains(0))
        throw std::invalid_argument("construct_connection_set: K contains the identity");
    for (int x : k.elements()) {
        if (!h.contains(x))
            throw std::invalid_argument("construct_connection_set: K element '" + g.name(x) +
                                        "' lies outside H");
        if (!k.contains(g.inv(x)))
            throw std::invalid_argument("construct_connection_set: K is not inverse-closed at '" +
                                        g.name(x) + "'");
    }
    std::string why;
    if (!validate_ordered_s0(g, h, s0, &why))
        throw std::invalid_argument("construct_connection_set: invalid S0 (" + why + ")");

    if (h_order.empty()) {
        h_order = h.elements();  // ascending; identity (index 0) is first
    } else {
        ElementSet check(g, h_order);
        if (check != h || static_cast<int>(h_order.size()) != d)
            throw std::invalid_argument(
                "construct_connection_set: H ordering is not a permutation of H");
    }

    ConstructionTrace trace;
    trace.h_order = h_order;
    trace.s0 = s0;
    trace.b = b;
    trace.k = k;

    const int m = s0.m;
    const int n = static_cast<int>(s0.elems.size());

    ElementSet assembled = k;
    int expected_size = k.size();

    for (int i = 0; i < b; ++i) {
        ElementSet block(g);
        for (int r = 0; r < m; ++r) {
            const int front = g.mul(s0.elems[r], h_order[i]);
            block.add(front);
            block.add(g.inv(front));
        }
        if (block.size() != 2 * m)
            throw std::logic_error("construct_connection_set: |S_i| != 2m");
        trace.s_blocks.push_back(block);
        assembled = assembled | block;
        expected_size += 2 * m;
    }

    for (int j = 2 * m; j < n; ++j) {
        const CosetDecomposition dec = decompose_coset(g, h, s0.elems[j]);
        ElementSet block(g);
        if (b > 2 * dec.alpha) {
            for (const auto& [u, ui] : dec.u_pairs) {
                block.add(u);
                block.add(ui);
            }
            for (int l = 0; l < b - 2 * dec.alpha; ++l) block.add(dec.v_involutions[l]);
        } else if (b % 2 == 1) {
            for (int t = 0; t < (b - 1) / 2; ++t) {
                block.add(dec.u_pairs[t].first);
                block.add(dec.u_pairs[t].second);
            }
            block.add(dec.v_involutions[0]);
        } else {
            for (int t = 0; t < b / 2; ++t) {
                block.add(dec.u_pairs[t].first);
                block.add(dec.u_pairs[t].second);
            }
        }
        if (block.size() != b) throw std::logic_error("construct_connection_set: |T_j| != b");
        trace.t_blocks.push_back(block);
        trace.coset_decomps.push_back(dec);
        assembled = assembled | block;
        expected_size += b;
    }

    if (assembled.size() != expected_size)
        throw std::logic_error("construct_connection_set: blocks are not disjoint");
    trace.result = make_connection_set(g, assembled);
    return trace;
}

/// Canonical inverse-closed subset of H\{e} of the given size: the least
/// involution first when the size is odd, then inverse pairs of
/// non-involutions ascending, then further involutions ascending as needed.
inline std::optional<ElementSet> canonical_inverse_closed_subset(const GroupTable& g,
                                                                 const ElementSet& h, int size) {
    if (size < 0 || size > h.size() - 1) return std::nullopt;
    std::vector<int> involutions;
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> used(g.order(), 0);
    for (int x : h.elements()) {
        if (x == 0 || used[x]) continue;
        if (is_involution(g, x)) involutions.push_back(x);
        else {
            pairs.emplace_back(x, g.inv(x));
            used[g.inv(x)] = 1;
        }
        used[x] = 1;
    }
    ElementSet k(g);
    int need = size;
    size_t next_involution = 0;
    if (need % 2 == 1) {
        if (involutions.empty()) return std::nullopt;  // odd size needs an involution
        k.add(involutions[next_involution++]);
        --need;
    }
    for (const auto& [x, y] : pairs) {
        if (need < 2) break;
        k.add(x);
        k.add(y);
        need -= 2;
    }
    while (need > 0 && next_involution < involutions.size()) {
        k.add(involutions[next_involution++]);
        --need;
    }
    if (need != 0) return std::nullopt;
    return k;
}

/// One-call construction for a target (a,b): canonical K of size a, canonical
/// transversal, Construction blocks. Returns nullopt when H admits no
/// inverse-closed transversal or when |H| is odd and a is odd.
inline std::optional<ConstructionTrace> regular_set_connection(const GroupTable& g,
                                                               const ElementSet& h, int a, int b) {
    detail::require_nontrivial_proper_normal(g, h, "regular_set_connection");
    const int d = h.size();
    if (a < 0 || a > d - 1)
        throw std::invalid_argument("regular_set_connection: a out of range [0, |H|-1]");
    if (b < 0 || b > d)
        throw std::invalid_argument("regular_set_connection: b out of range [0, |H|]");
    if (d % 2 == 1 && a % 2 == 1) return std::nullopt;  // gcd(2,|H|-1) must divide a
    const std::optional<OrderedS0> s0 = inverse_closed_transversal(g, h);
    if (!s0) return std::nullopt;
    const std::optional<ElementSet> k = canonical_inverse_closed_subset(g, h, a);
    if (!k) return std::nullopt;
    return construct_connection_set(g, h, *k, b, *s0);
}

namespace detail {

inline RegularSetCertificate require_subgroup_certificate(const GroupTable& g,
                                                          const ConnectionSet& s,
                                                          const ElementSet& h, const char* what) {
    const auto cert = check_subgroup_regular(g, s, h);
    if (!cert)
        throw std::invalid_argument(std::string(what) +
                                    ": H is not a regular set in Cay(G,S) for any (a,b)");
    return *cert;
}

}  // namespace detail

/// Replace S by (S cap H) u (G \ H); turns an (a,b) certificate into (a,|H|).
inline ConnectionSet complement_to_full(const GroupTable& g, const ConnectionSet& s,
                                        const ElementSet& h) {
    detail::require_subgroup_certificate(g, s, h, "complement_to_full");
    return make_connection_set(g, (s.elems() & h) | h.complement());
}

/// Replace S by (S cap H) u (G \ (S u H)); turns (a,b) into (a,|H|-b).
/// Applying the transform twice restores the original set.
inline ConnectionSet complement_outside(const GroupTable& g, const ConnectionSet& s,
                                        const ElementSet& h) {
    detail::require_subgroup_certificate(g, s, h, "complement_outside");
    return make_connection_set(g, (s.elems() & h) | ((s.elems() | h).complement()));
}

}  // namespace regsets
