#pragma once

#include <optional>

#include "cayley.hpp"

namespace regsets {

/// Integer-coefficient vector over the group elements (a group-ring element).
class ElementMultiset {
public:
    explicit ElementMultiset(const GroupTable& g) : group_(&g), coeff_(g.order(), 0) {}

    static ElementMultiset indicator(const ElementSet& s) {
        ElementMultiset m(s.group());
        for (int g : s.elements()) m.coeff_[g] = 1;
        return m;
    }

    const GroupTable& group() const { return *group_; }
    long long& operator[](int g) { return coeff_[g]; }
    long long operator[](int g) const { return coeff_[g]; }
    const std::vector<long long>& coeffs() const { return coeff_; }

    bool operator==(const ElementMultiset& o) const { return coeff_ == o.coeff_; }

    ElementMultiset& add_scaled(const ElementSet& s, long long factor) {
        for (int g : s.elements()) coeff_[g] += factor;
        return *this;
    }

private:
    const GroupTable* group_;
    std::vector<long long> coeff_;
};

/// Group-ring product: out[x] = sum over gh = x of A[g]*B[h].
inline ElementMultiset ring_multiply(const ElementMultiset& a, const ElementMultiset& b) {
    if (&a.group() != &b.group())
        throw std::invalid_argument("ring_multiply: operands over different groups");
    const GroupTable& g = a.group();
    ElementMultiset out(g);
    std::vector<int> sup_a, sup_b;
    for (int i = 0; i < g.order(); ++i) {
        if (a[i]) sup_a.push_back(i);
        if (b[i]) sup_b.push_back(i);
    }
    for (int x : sup_a)
        for (int y : sup_b) out[g.mul(x, y)] += a[x] * b[y];
    return out;
}

/// Witness that a subset is not regular: two vertices on the same side of the
/// partition with different neighbor counts in C.
struct RegularityWitness {
    int u = -1;
    int v = -1;
    int count_u = 0;
    int count_v = 0;
};

/// Verified (a,b) parameters together with the per-vertex counts behind them.
struct RegularSetCertificate {
    int a = 0;
    int b = 0;
    int set_size = 0;
    int degree = 0;
    std::vector<int> counts;  // |N(v) cap C| per vertex
};

/// Per-vertex neighbor counts |S*v cap C|.
inline std::vector<int> neighbor_counts(const CayleyGraph& graph, const ElementSet& c) {
    const GroupTable& g = graph.group();
    std::vector<int> counts(g.order(), 0);
    const std::vector<int> s_elems = graph.connection().elems().elements();
    for (int v = 0; v < g.order(); ++v) {
        int cnt = 0;
        for (int s : s_elems)
            if (c.contains(g.mul(s, v))) ++cnt;
        counts[v] = cnt;
    }
    return counts;
}

/// Certify C as an (a,b)-regular set by direct neighborhood counting.
/// Returns nullopt (and fills *witness if given) when C is not regular.
/// C must be a nonempty proper subset.
inline std::optional<RegularSetCertificate> check_regular_set(const CayleyGraph& graph,
                                                              const ElementSet& c,
                                                              RegularityWitness* witness = nullptr) {
    const GroupTable& g = graph.group();
    if (c.empty()) throw std::invalid_argument("check_regular_set: C is empty");
    if (c.is_full()) throw std::invalid_argument("check_regular_set: C is the whole group");

    const std::vector<int> counts = neighbor_counts(graph, c);
    int a = -1, b = -1, first_in = -1, first_out = -1;
    for (int v = 0; v < g.order(); ++v) {
        if (c.contains(v)) {
            if (a < 0) { a = counts[v]; first_in = v; }
            else if (counts[v] != a) {
                if (witness) *witness = {first_in, v, a, counts[v]};
                return std::nullopt;
            }
        }
    }
    for (int v = 0; v < g.order(); ++v) {
        if (!c.contains(v)) {
            if (b < 0) { b = counts[v]; first_out = v; }
            else if (counts[v] != b) {
                if (witness) *witness = {first_out, v, b, counts[v]};
                return std::nullopt;
            }
        }
    }
    return RegularSetCertificate{a, b, c.size(), graph.degree(), counts};
}

/// Group-ring certifier: checks S*C = a*C + b*(G\C) and the equivalent
/// rearranged identity S*C + (b-a)*C = b*G. Independent of the counting path.
inline bool check_regular_set_ring(const CayleyGraph& graph, const ElementSet& c, long long a,
                                   long long b) {
    const GroupTable& g = graph.group();
    if (c.empty()) throw std::invalid_argument("check_regular_set_ring: C is empty");
    if (c.is_full()) throw std::invalid_argument("check_regular_set_ring: C is the whole group");

    const ElementMultiset product =
        ring_multiply(ElementMultiset::indicator(graph.connection().elems()),
                      ElementMultiset::indicator(c));

    ElementMultiset rhs_c(g);  // a*C + b*(G\C)
    rhs_c.add_scaled(c, a);
    rhs_c.add_scaled(c.complement(), b);
    const bool identity_c = product == rhs_c;

    ElementMultiset lhs_d = product;  // S*C + (b-a)*C  vs  b*G
    lhs_d.add_scaled(c, b - a);
    ElementMultiset rhs_d(g);
    rhs_d.add_scaled(ElementSet::full(g), b);
    const bool identity_d = lhs_d == rhs_d;

    if (identity_c != identity_d)
        throw std::logic_error("check_regular_set_ring: equivalent identities disagree");
    return identity_c;
}

/// Perfect-code test via the group-ring identity (S + e) * C = G.
inline bool is_perfect_code(const CayleyGraph& graph, const ElementSet& c) {
    if (c.empty()) throw std::invalid_argument("is_perfect_code: C is empty");
    const GroupTable& g = graph.group();
    ElementMultiset s_and_e = ElementMultiset::indicator(graph.connection().elems());
    s_and_e[0] += 1;
    const ElementMultiset product = ring_multiply(s_and_e, ElementMultiset::indicator(c));
    for (int v = 0; v < g.order(); ++v)
        if (product[v] != 1) return false;
    return true;
}

/// Total-perfect-code test: every vertex has exactly one neighbor in C.
inline bool is_total_perfect_code(const CayleyGraph& graph, const ElementSet& c) {
    if (c.empty()) throw std::invalid_argument("is_total_perfect_code: C is empty");
    for (int count : neighbor_counts(graph, c))
        if (count != 1) return false;
    // a matching on C forces even size
    if (c.size() % 2 != 0)
        throw std::logic_error("is_total_perfect_code: odd-size total perfect code");
    return true;
}

/// Subgroup criterion: H is (a,b)-regular iff a = |S cap H| and
/// (S\H) * H is the constant b on G\H. Independent of check_regular_set.
inline std::optional<RegularSetCertificate> check_subgroup_regular(
    const GroupTable& g, const ConnectionSet& s, const ElementSet& h,
    RegularityWitness* witness = nullptr) {
    require_subgroup(g, h, "check_subgroup_regular");
    if (h.is_full())
        throw std::invalid_argument("check_subgroup_regular: H must be a proper subgroup");

    const int a = (s.elems() & h).size();
    const ElementMultiset product =
        ring_multiply(ElementMultiset::indicator(s.elems() - h), ElementMultiset::indicator(h));

    int b = -1, first_out = -1;
    for (int v = 0; v < g.order(); ++v) {
        if (h.contains(v)) {
            if (product[v] != 0)
                throw std::logic_error("check_subgroup_regular: (S\\H)*H nonzero on H");
            continue;
        }
        const int cnt = static_cast<int>(product[v]);
        if (b < 0) { b = cnt; first_out = v; }
        else if (cnt != b) {
            if (witness) *witness = {first_out, v, b, cnt};
            return std::nullopt;
        }
    }

    RegularSetCertificate cert{a, b, h.size(), s.size(), {}};
    cert.counts.resize(g.order());
    for (int v = 0; v < g.order(); ++v)
        cert.counts[v] = h.contains(v) ? a : static_cast<int>(product[v]);
    return cert;
}

/// Check: for every g with g^2 in H there is h in H with (gh)^2 = e.
/// On failure the first violating g (ascending) is reported via *witness.
inline bool condition1_holds(const GroupTable& g, const ElementSet& h, int* witness = nullptr) {
    require_subgroup(g, h, "condition1_holds");
    const std::vector<int> h_elems = h.elements();
    for (int x = 0; x < g.order(); ++x) {
        if (!h.contains(g.mul(x, x))) continue;
        bool found = false;
        for (int a : h_elems) {
            const int xa = g.mul(x, a);
            if (g.mul(xa, xa) == 0) { found = true; break; }
        }
        if (!found) {
            if (witness) *witness = x;
            return false;
        }
    }
    return true;
}

}  // namespace regsets
