#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace regsets {

/// A finite group given by its complete multiplication table.
/// Element 0 is always the identity. The table is validated (Latin square,
/// identity row/column, inverses, associativity) on construction.
class GroupTable {
public:
    GroupTable(std::vector<std::string> names, std::vector<int> mul_flat,
               bool check_associativity = true, int associativity_cap = 256)
        : order_(static_cast<int>(names.size())),
          names_(std::move(names)),
          mul_(std::move(mul_flat)) {
        if (order_ <= 0)
            throw std::invalid_argument("group table: empty element list");
        if (mul_.size() != static_cast<size_t>(order_) * order_)
            throw std::invalid_argument("group table: table size does not match order");
        validate(check_associativity, associativity_cap);
        inv_.resize(order_);
        for (int g = 0; g < order_; ++g) {
            int found = -1;
            for (int h = 0; h < order_; ++h)
                if (mul(g, h) == 0 && mul(h, g) == 0) { found = h; break; }
            if (found < 0)
                throw std::invalid_argument("group table: element '" + names_[g] + "' has no inverse");
            inv_[g] = found;
        }
        for (int g = 0; g < order_; ++g) {
            if (!index_.emplace(names_[g], g).second)
                throw std::invalid_argument("group table: duplicate element name '" + names_[g] + "'");
        }
    }

    int order() const { return order_; }
    int mul(int g, int h) const { return mul_[static_cast<size_t>(g) * order_ + h]; }
    int inv(int g) const { return inv_[g]; }
    const std::string& name(int g) const { return names_[g]; }
    const std::vector<std::string>& names() const { return names_; }

    /// Index of a named element; "e" is accepted as an alias for the identity.
    int index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it != index_.end()) return it->second;
        if (name == "e") return 0;
        throw std::invalid_argument("unknown element name '" + name + "'");
    }

    bool has_element(const std::string& name) const {
        return index_.count(name) > 0 || name == "e";
    }

private:
    void validate(bool check_associativity, int associativity_cap) const {
        const int n = order_;
        std::vector<char> seen(n);
        for (int g = 0; g < n; ++g) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int h = 0; h < n; ++h) {
                int p = mul(g, h);
                if (p < 0 || p >= n)
                    throw std::invalid_argument("group table: entry out of range");
                if (seen[p]++)
                    throw std::invalid_argument("group table: row " + std::to_string(g) +
                                                " is not a permutation (not a Latin square)");
            }
        }
        for (int h = 0; h < n; ++h) {
            std::fill(seen.begin(), seen.end(), 0);
            for (int g = 0; g < n; ++g) {
                if (seen[mul(g, h)]++)
                    throw std::invalid_argument("group table: column " + std::to_string(h) +
                                                " is not a permutation (not a Latin square)");
            }
        }
        for (int g = 0; g < n; ++g)
            if (mul(0, g) != g || mul(g, 0) != g)
                throw std::invalid_argument("group table: element 0 is not an identity");
        if (check_associativity && n <= associativity_cap) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const int ab = mul(a, b);
                    for (int c = 0; c < n; ++c)
                        if (mul(ab, c) != mul(a, mul(b, c)))
                            throw std::invalid_argument(
                                "group table: not associative at (" + names_[a] + "," +
                                names_[b] + "," + names_[c] + ")");
                }
        }
    }

    int order_;
    std::vector<std::string> names_;
    std::vector<int> mul_;
    std::vector<int> inv_;
    std::unordered_map<std::string, int> index_;
};

/// A subset of group elements, stored as a bitmask over element indices.
class ElementSet {
public:
    ElementSet() = default;
    explicit ElementSet(const GroupTable& g)
        : group_(&g), words_((g.order() + 63) / 64, 0) {}
    ElementSet(const GroupTable& g, std::initializer_list<int> elems) : ElementSet(g) {
        for (int e : elems) add(e);
    }
    ElementSet(const GroupTable& g, const std::vector<int>& elems) : ElementSet(g) {
        for (int e : elems) add(e);
    }

    const GroupTable& group() const {
        if (!group_) throw std::logic_error("ElementSet: no group attached");
        return *group_;
    }
    bool attached() const { return group_ != nullptr; }

    bool contains(int g) const { return (words_[g >> 6] >> (g & 63)) & 1u; }
    void add(int g) {
        check_range(g);
        words_[g >> 6] |= uint64_t{1} << (g & 63);
    }
    void remove(int g) {
        check_range(g);
        words_[g >> 6] &= ~(uint64_t{1} << (g & 63));
    }

    int size() const {
        int c = 0;
        for (uint64_t w : words_) c += __builtin_popcountll(w);
        return c;
    }
    bool empty() const {
        for (uint64_t w : words_) if (w) return false;
        return true;
    }
    bool is_full() const { return size() == group().order(); }

    std::vector<int> elements() const {
        std::vector<int> out;
        out.reserve(size());
        for (int w = 0; w < static_cast<int>(words_.size()); ++w) {
            uint64_t bits = words_[w];
            while (bits) {
                out.push_back(w * 64 + __builtin_ctzll(bits));
                bits &= bits - 1;
            }
        }
        return out;
    }

    /// Least member, or -1 when empty.
    int first() const {
        for (int w = 0; w < static_cast<int>(words_.size()); ++w)
            if (words_[w]) return w * 64 + __builtin_ctzll(words_[w]);
        return -1;
    }

    ElementSet operator|(const ElementSet& o) const {
        ElementSet r = *this;
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] |= o.words_[i];
        return r;
    }
    ElementSet operator&(const ElementSet& o) const {
        ElementSet r = *this;
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
        return r;
    }
    /// Set difference.
    ElementSet operator-(const ElementSet& o) const {
        ElementSet r = *this;
        check_same(o);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] &= ~o.words_[i];
        return r;
    }
    bool operator==(const ElementSet& o) const { return words_ == o.words_; }
    bool operator!=(const ElementSet& o) const { return words_ != o.words_; }
    bool operator<(const ElementSet& o) const { return words_ < o.words_; }

    ElementSet complement() const {
        ElementSet r(group());
        const int n = group().order();
        for (int w = 0; w < static_cast<int>(words_.size()); ++w) r.words_[w] = ~words_[w];
        // mask tail bits beyond the group order
        const int tail = n & 63;
        if (tail) r.words_.back() &= (uint64_t{1} << tail) - 1;
        return r;
    }

    /// Elementwise inverse image {g^{-1} : g in this}.
    ElementSet inverse_elements() const {
        ElementSet r(group());
        for (int g : elements()) r.add(group().inv(g));
        return r;
    }

    static ElementSet full(const GroupTable& g) {
        ElementSet r(g);
        for (int i = 0; i < g.order(); ++i) r.add(i);
        return r;
    }
    static ElementSet of_names(const GroupTable& g, const std::vector<std::string>& names) {
        ElementSet r(g);
        for (const auto& nm : names) r.add(g.index_of(nm));
        return r;
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (int g : elements()) out.push_back(group().name(g));
        return out;
    }

    const std::vector<uint64_t>& words() const { return words_; }

private:
    void check_range(int g) const {
        if (g < 0 || g >= group().order())
            throw std::invalid_argument("element index out of range");
    }
    void check_same(const ElementSet& o) const {
        if (group_ != o.group_)
            throw std::invalid_argument("element sets belong to different groups");
    }

    const GroupTable* group_ = nullptr;
    std::vector<uint64_t> words_;
};

/// True iff A = A^{-1} elementwise.
inline bool is_inverse_closed(const GroupTable& g, const ElementSet& a) {
    for (int x : a.elements())
        if (!a.contains(g.inv(x))) return false;
    return true;
}

/// Least n >= 1 with g^n = identity.
inline int element_order(const GroupTable& g, int x) {
    if (x < 0 || x >= g.order()) throw std::invalid_argument("element index out of range");
    int n = 1, cur = x;
    while (cur != 0) {
        cur = g.mul(cur, x);
        ++n;
    }
    return n;
}

inline bool is_involution(const GroupTable& g, int x) { return x != 0 && g.mul(x, x) == 0; }

/// Smallest subgroup containing the generators (closure under mul; inverses
/// follow from finiteness).
inline ElementSet generate_subgroup(const GroupTable& g, const ElementSet& gens) {
    ElementSet h(g);
    h.add(0);
    std::vector<int> frontier{0};
    const std::vector<int> gen_elems = gens.elements();
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int a : frontier) {
            for (int b : gen_elems) {
                for (int p : {g.mul(a, b), g.mul(b, a)}) {
                    if (!h.contains(p)) {
                        h.add(p);
                        next.push_back(p);
                    }
                }
            }
        }
        frontier = std::move(next);
    }
    return h;
}

/// Closure test: contains the identity and is closed under multiplication.
inline bool is_subgroup(const GroupTable& g, const ElementSet& h) {
    if (!h.contains(0)) return false;
    const std::vector<int> elems = h.elements();
    for (int a : elems)
        for (int b : elems)
            if (!h.contains(g.mul(a, b))) return false;
    return true;
}

inline void require_subgroup(const GroupTable& g, const ElementSet& h, const char* what) {
    if (!is_subgroup(g, h))
        throw std::invalid_argument(std::string(what) + ": input is not a subgroup");
}

/// True iff gHg^{-1} = H for all g.
inline bool is_normal(const GroupTable& g, const ElementSet& h) {
    require_subgroup(g, h, "is_normal");
    const std::vector<int> elems = h.elements();
    for (int x = 0; x < g.order(); ++x) {
        const int xi = g.inv(x);
        for (int a : elems)
            if (!h.contains(g.mul(g.mul(x, a), xi))) return false;
    }
    return true;
}

/// Partition of the group into left cosets of a subgroup, ordered by least member.
struct CosetPartition {
    ElementSet subgroup;
    std::vector<ElementSet> cosets;     // ascending by least member; cosets[0] = subgroup
    std::vector<int> representative;    // least element of each coset
    std::vector<int> coset_of;          // coset index per group element

    int count() const { return static_cast<int>(cosets.size()); }
};

inline CosetPartition left_cosets(const GroupTable& g, const ElementSet& h) {
    require_subgroup(g, h, "left_cosets");
    CosetPartition p;
    p.subgroup = h;
    p.coset_of.assign(g.order(), -1);
    const std::vector<int> elems = h.elements();
    for (int x = 0; x < g.order(); ++x) {
        if (p.coset_of[x] >= 0) continue;
        const int idx = p.count();
        ElementSet coset(g);
        for (int a : elems) {
            const int m = g.mul(x, a);
            coset.add(m);
            p.coset_of[m] = idx;
        }
        p.cosets.push_back(coset);
        p.representative.push_back(x);
    }
    return p;
}

/// Right cosets Hg, same ordering convention.
inline CosetPartition right_cosets(const GroupTable& g, const ElementSet& h) {
    require_subgroup(g, h, "right_cosets");
    CosetPartition p;
    p.subgroup = h;
    p.coset_of.assign(g.order(), -1);
    const std::vector<int> elems = h.elements();
    for (int x = 0; x < g.order(); ++x) {
        if (p.coset_of[x] >= 0) continue;
        const int idx = p.count();
        ElementSet coset(g);
        for (int a : elems) {
            const int m = g.mul(a, x);
            coset.add(m);
            p.coset_of[m] = idx;
        }
        p.cosets.push_back(coset);
        p.representative.push_back(x);
    }
    return p;
}

/// All subgroups, deterministic order (by size, then by bitmask).
/// Closure-based lattice walk; refuses groups above the cap.
inline std::vector<ElementSet> all_subgroups(const GroupTable& g, int order_cap = 128) {
    if (g.order() > order_cap)
        throw std::invalid_argument("all_subgroups: group order exceeds enumeration cap");
    std::set<std::vector<uint64_t>> seen;
    std::vector<ElementSet> result;
    std::vector<ElementSet> frontier;
    ElementSet trivial(g);
    trivial.add(0);
    seen.insert(trivial.words());
    result.push_back(trivial);
    frontier.push_back(trivial);
    while (!frontier.empty()) {
        std::vector<ElementSet> next;
        for (const ElementSet& h : frontier) {
            for (int x = 1; x < g.order(); ++x) {
                if (h.contains(x)) continue;
                ElementSet gens = h;
                gens.add(x);
                ElementSet k = generate_subgroup(g, gens);
                if (seen.insert(k.words()).second) {
                    result.push_back(k);
                    next.push_back(k);
                }
            }
        }
        frontier = std::move(next);
    }
    std::sort(result.begin(), result.end(), [](const ElementSet& a, const ElementSet& b) {
        const int sa = a.size(), sb = b.size();
        if (sa != sb) return sa < sb;
        return a.words() < b.words();
    });
    return result;
}

}  // namespace regsets
