#pragma once

#include <thread>

#include "construction.hpp"
#include "families.hpp"

namespace regsets {

struct SearchBudget {
    std::uint64_t max_candidates = std::uint64_t{1} << 24;
    int workers = 1;
};

enum class SearchVerdict { yes, no, unknown };

/// Minimal inverse-closed unit: a single involution or an inverse pair.
struct InverseClosedAtom {
    int first = -1;
    int second = -1;  // == first for an involution
    bool involution() const { return first == second; }
    int size() const { return involution() ? 1 : 2; }
};

/// Atoms of G\{e}, sorted by least element; every inverse-closed subset of
/// G\{e} is a disjoint union of atoms.
inline std::vector<InverseClosedAtom> inverse_closed_atoms(const GroupTable& g) {
    std::vector<InverseClosedAtom> atoms;
    std::vector<char> used(g.order(), 0);
    for (int x = 1; x < g.order(); ++x) {
        if (used[x]) continue;
        const int y = g.inv(x);
        used[x] = used[y] = 1;
        atoms.push_back({x, y});
        if (atoms.back().second < atoms.back().first) std::swap(atoms.back().first, atoms.back().second);
    }
    return atoms;
}

namespace detail {

/// Run fn(begin, end, worker) over [0, total) split into contiguous chunks.
inline void parallel_chunks(std::uint64_t total, int workers,
                            const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
    if (workers <= 1 || total < 2) {
        fn(0, total, 0);
        return;
    }
    const int w = std::min<std::uint64_t>(workers, total);
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + w - 1) / w;
    for (int i = 0; i < w; ++i) {
        const std::uint64_t lo = chunk * i;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, total);
        threads.emplace_back([&fn, lo, hi, i] { fn(lo, hi, i); });
    }
    for (auto& t : threads) t.join();
}

/// Binomial table up to n choose k, saturating at 2^63-1.
struct BinomialTable {
    std::vector<std::vector<std::uint64_t>> c;
    explicit BinomialTable(int n) : c(n + 1, std::vector<std::uint64_t>(n + 1, 0)) {
        constexpr std::uint64_t cap = ~std::uint64_t{0} >> 1;
        for (int i = 0; i <= n; ++i) {
            c[i][0] = 1;
            for (int j = 1; j <= i; ++j) {
                const std::uint64_t v = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
                c[i][j] = std::min(v, cap);
            }
        }
    }
    std::uint64_t operator()(int n, int k) const {
        if (k < 0 || k > n) return 0;
        return c[n][k];
    }
};

/// Lexicographic unranking of a p-combination of {0..n-1}.
inline std::vector<int> unrank_combination(const BinomialTable& binom, int n, int p,
                                           std::uint64_t rank) {
    std::vector<int> out;
    out.reserve(p);
    int v = 0;
    for (int remaining = p; remaining > 0; --remaining) {
        for (;; ++v) {
            const std::uint64_t cnt = binom(n - 1 - v, remaining - 1);
            if (rank < cnt) break;
            rank -= cnt;
        }
        out.push_back(v++);
    }
    return out;
}

/// Advance to the next combination in lexicographic order; false at the end.
inline bool next_combination(std::vector<int>& comb, int n) {
    const int p = static_cast<int>(comb.size());
    for (int i = p - 1; i >= 0; --i) {
        if (comb[i] < n - p + i) {
            ++comb[i];
            for (int j = i + 1; j < p; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

/// Candidate stream over atom subsets ordered by (popcount, lexicographic),
/// identified by a global rank. Visits ranks [lo, hi).
template <typename Fn>
void visit_atom_subsets(const BinomialTable& binom, int n_atoms, std::uint64_t lo,
                        std::uint64_t hi, Fn&& fn) {
    std::uint64_t block_start = 0;
    for (int p = 0; p <= n_atoms; ++p) {
        const std::uint64_t block = binom(n_atoms, p);
        const std::uint64_t block_end = block_start + block;
        if (block_end > lo && block_start < hi) {
            const std::uint64_t first = std::max(lo, block_start) - block_start;
            const std::uint64_t last = std::min(hi, block_end) - block_start;
            std::vector<int> comb = unrank_combination(binom, n_atoms, p, first);
            for (std::uint64_t r = first; r < last; ++r) {
                fn(block_start + r, comb);
                if (r + 1 < last) next_combination(comb, n_atoms);
            }
        }
        block_start = block_end;
        if (block_start >= hi) break;
    }
}

}  // namespace detail

/// Exhaustively list the regular sets of a Cayley graph, optionally filtered
/// to one (a,b). Subsets are visited as bitmasks in ascending value; the
/// group order must not exceed the cap.
inline std::vector<std::pair<ElementSet, RegularSetCertificate>> enumerate_regular_sets(
    const CayleyGraph& graph, std::optional<std::pair<int, int>> filter = std::nullopt,
    int order_cap = 20, int workers = 1) {
    const GroupTable& g = graph.group();
    const int n = g.order();
    if (n > order_cap)
        throw std::invalid_argument(
            "enumerate_regular_sets: group order exceeds the all-subsets cap (" +
            std::to_string(order_cap) + "); use the subgroup feasibility search instead");
    if (n > 63) throw std::invalid_argument("enumerate_regular_sets: order above 63 unsupported");

    std::vector<std::uint64_t> nbr(n, 0);
    for (int v = 0; v < n; ++v)
        for (int u : graph.neighbors(v).elements()) nbr[v] |= std::uint64_t{1} << u;

    const std::uint64_t total = (std::uint64_t{1} << n) - 2;  // masks 1 .. 2^n-2
    std::vector<std::vector<std::pair<ElementSet, RegularSetCertificate>>> found(
        std::max(workers, 1));

    detail::parallel_chunks(total, workers, [&](std::uint64_t lo, std::uint64_t hi, int w) {
        auto& out = found[w];
        for (std::uint64_t r = lo; r < hi; ++r) {
            const std::uint64_t mask = r + 1;
            int a = -1, b = -1;
            bool ok = true;
            for (int v = 0; v < n && ok; ++v) {
                const int cnt = __builtin_popcountll(nbr[v] & mask);
                if (mask >> v & 1) {
                    if (a < 0) a = cnt;
                    else ok = cnt == a;
                } else {
                    if (b < 0) b = cnt;
                    else ok = cnt == b;
                }
            }
            if (!ok) continue;
            if (filter && (a != filter->first || b != filter->second)) continue;
            ElementSet c(g);
            for (int v = 0; v < n; ++v)
                if (mask >> v & 1) c.add(v);
            RegularSetCertificate cert{a, b, c.size(), graph.degree(), {}};
            cert.counts.resize(n);
            for (int v = 0; v < n; ++v) cert.counts[v] = __builtin_popcountll(nbr[v] & mask);
            out.emplace_back(std::move(c), std::move(cert));
        }
    });

    std::vector<std::pair<ElementSet, RegularSetCertificate>> result;
    for (auto& chunk : found)
        for (auto& item : chunk) result.push_back(std::move(item));
    return result;
}

struct FeasibilityCell {
    SearchVerdict state = SearchVerdict::unknown;
    std::optional<ElementSet> witness;
};

/// Feasibility of each (a,b) pair for a fixed subgroup, with a certified
/// witness connection set per feasible cell.
struct FeasibilityTable {
    ElementSet subgroup;
    bool normal = false;
    std::vector<std::vector<FeasibilityCell>> cells;  // [a][b], a <= |H|-1, b <= |H|
    bool complete = true;
    std::uint64_t candidates_examined = 0;

    const FeasibilityCell& cell(int a, int b) const { return cells.at(a).at(b); }
};

namespace detail {

/// Per-atom element counts within each left coset of H.
inline std::vector<std::vector<int>> atom_coset_counts(const CosetPartition& cosets,
                                                       const std::vector<InverseClosedAtom>& atoms) {
    std::vector<std::vector<int>> counts(atoms.size(), std::vector<int>(cosets.count(), 0));
    for (size_t t = 0; t < atoms.size(); ++t) {
        counts[t][cosets.coset_of[atoms[t].first]]++;
        if (!atoms[t].involution()) counts[t][cosets.coset_of[atoms[t].second]]++;
    }
    return counts;
}

inline ElementSet atoms_to_set(const GroupTable& g, const std::vector<InverseClosedAtom>& atoms,
                               const std::vector<int>& comb) {
    ElementSet s(g);
    for (int t : comb) {
        s.add(atoms[t].first);
        s.add(atoms[t].second);
    }
    return s;
}

}  // namespace detail

/// Exhaustive (a,b)-feasibility table for a nontrivial proper subgroup
/// (normality not required). Searches inverse-closed connection sets as atom
/// subsets in (popcount, lex) order, keeping the least-ranked witness per
/// cell; cells left undecided at the budget are marked unknown.
inline FeasibilityTable feasible_ab_table(const GroupTable& g, const ElementSet& h,
                                          const SearchBudget& budget = {}) {
    require_subgroup(g, h, "feasible_ab_table");
    if (h.size() <= 1) throw std::invalid_argument("feasible_ab_table: subgroup is trivial");
    if (h.is_full()) throw std::invalid_argument("feasible_ab_table: subgroup is the whole group");

    const int d = h.size();
    const CosetPartition cosets = left_cosets(g, h);
    const std::vector<InverseClosedAtom> atoms = inverse_closed_atoms(g);
    const int n_atoms = static_cast<int>(atoms.size());
    const std::vector<std::vector<int>> counts = detail::atom_coset_counts(cosets, atoms);
    const int n_cosets = cosets.count();
    const bool h_has_involutions = d % 2 == 0;  // no involutions in odd-order H

    FeasibilityTable table;
    table.subgroup = h;
    table.normal = is_normal(g, h);
    table.cells.assign(d, std::vector<FeasibilityCell>(d + 1));

    const detail::BinomialTable binom(n_atoms);
    const std::uint64_t space =
        n_atoms >= 63 ? (~std::uint64_t{0} >> 1) : (std::uint64_t{1} << n_atoms);
    const std::uint64_t limit = std::min(space, budget.max_candidates);
    table.candidates_examined = limit;

    struct Hit {
        std::uint64_t rank;
        std::vector<int> comb;
    };
    const int workers = std::max(budget.workers, 1);
    std::vector<std::vector<std::vector<std::optional<Hit>>>> local(
        workers, std::vector<std::vector<std::optional<Hit>>>(
                     d, std::vector<std::optional<Hit>>(d + 1)));

    detail::parallel_chunks(limit, workers, [&](std::uint64_t lo, std::uint64_t hi, int w) {
        std::vector<int> coset_count(n_cosets);
        detail::visit_atom_subsets(binom, n_atoms, lo, hi,
                                   [&](std::uint64_t rank, const std::vector<int>& comb) {
            std::fill(coset_count.begin(), coset_count.end(), 0);
            for (int t : comb)
                for (int ci = 0; ci < n_cosets; ++ci) coset_count[ci] += counts[t][ci];
            const int a = coset_count[cosets.coset_of[0]];
            int b = -1;
            for (int ci = 0; ci < n_cosets; ++ci) {
                if (ci == cosets.coset_of[0]) continue;
                if (b < 0) b = coset_count[ci];
                else if (coset_count[ci] != b) return;
            }
            auto& slot = local[w][a][b];
            if (!slot || rank < slot->rank) slot = Hit{rank, comb};
        });
    });

    for (int a = 0; a < d; ++a)
        for (int b = 0; b <= d; ++b) {
            std::optional<Hit> best;
            for (int w = 0; w < workers; ++w) {
                const auto& slot = local[w][a][b];
                if (slot && (!best || slot->rank < best->rank)) best = slot;
            }
            FeasibilityCell& cell = table.cells[a][b];
            if (best) {
                cell.state = SearchVerdict::yes;
                cell.witness = detail::atoms_to_set(g, atoms, best->comb);
            } else if (!h_has_involutions && a % 2 == 1) {
                cell.state = SearchVerdict::no;  // parity: |S cap H| is even for odd |H|
            } else if (limit == space) {
                cell.state = SearchVerdict::no;
            } else {
                cell.state = SearchVerdict::unknown;
                table.complete = false;
            }
        }
    return table;
}

struct SearchOutcome {
    SearchVerdict verdict = SearchVerdict::unknown;
    std::optional<ElementSet> witness;
};

/// Does some inverse-closed S make H a perfect code in Cay(G,S)?
/// Exhaustive over atom subsets in (popcount, lex) order; the witness is the
/// first one found. H may be any proper subgroup, including the trivial one.
inline SearchOutcome perfect_code_connection_exists(const GroupTable& g, const ElementSet& h,
                                                    const SearchBudget& budget = {}) {
    require_subgroup(g, h, "perfect_code_connection_exists");
    if (h.is_full())
        throw std::invalid_argument("perfect_code_connection_exists: subgroup is the whole group");

    const CosetPartition cosets = left_cosets(g, h);
    const std::vector<InverseClosedAtom> atoms = inverse_closed_atoms(g);
    const int n_atoms = static_cast<int>(atoms.size());
    const std::vector<std::vector<int>> counts = detail::atom_coset_counts(cosets, atoms);
    const int n_cosets = cosets.count();
    const int h_coset = cosets.coset_of[0];

    const detail::BinomialTable binom(n_atoms);
    const std::uint64_t space =
        n_atoms >= 63 ? (~std::uint64_t{0} >> 1) : (std::uint64_t{1} << n_atoms);
    const std::uint64_t limit = std::min(space, budget.max_candidates);

    SearchOutcome out;
    std::vector<int> coset_count(n_cosets);
    bool found = false;
    detail::visit_atom_subsets(binom, n_atoms, 0, limit,
                               [&](std::uint64_t, const std::vector<int>& comb) {
        if (found) return;
        std::fill(coset_count.begin(), coset_count.end(), 0);
        for (int t : comb)
            for (int ci = 0; ci < n_cosets; ++ci) coset_count[ci] += counts[t][ci];
        if (coset_count[h_coset] != 0) return;
        for (int ci = 0; ci < n_cosets; ++ci)
            if (ci != h_coset && coset_count[ci] != 1) return;
        found = true;
        out.verdict = SearchVerdict::yes;
        out.witness = detail::atoms_to_set(g, atoms, comb);
    });
    if (!found) out.verdict = limit == space ? SearchVerdict::no : SearchVerdict::unknown;
    return out;
}

/// One probe row: a non-normal subgroup with both sides of the open
/// equivalence computed independently.
struct Question1Row {
    std::string group_spec;
    std::vector<std::string> subgroup_names;
    bool condition1 = false;
    SearchVerdict perfect_code = SearchVerdict::unknown;

    bool decided() const { return perfect_code != SearchVerdict::unknown; }
    bool agree() const { return condition1 == (perfect_code == SearchVerdict::yes); }
};

struct Question1Report {
    std::vector<Question1Row> rows;
    std::vector<Question1Row> disagreements;  // counterexample candidates
    std::vector<std::string> skipped;         // "<spec>: <reason>"
};

/// For every non-normal subgroup of every listed group, compare condition-(1)
/// with exhaustive perfect-code search. Reports disagreements; claims nothing
/// beyond the searched family. Groups are sharded across workers and merged
/// in input order.
inline Question1Report question1_probe(const std::vector<std::string>& group_specs,
                                       const SearchBudget& budget = {}) {
    // build up front so malformed specs reach the caller, not a worker thread
    std::vector<GroupTable> groups;
    groups.reserve(group_specs.size());
    for (const std::string& spec : group_specs) groups.push_back(build_group(spec));

    std::vector<Question1Report> partial(group_specs.size());
    detail::parallel_chunks(group_specs.size(), budget.workers,
                            [&](std::uint64_t lo, std::uint64_t hi, int) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::string& spec = group_specs[i];
            Question1Report& part = partial[i];
            const GroupTable& g = groups[i];
            std::vector<ElementSet> subgroups;
            try {
                subgroups = all_subgroups(g);
            } catch (const std::invalid_argument& e) {
                part.skipped.push_back(spec + ": " + e.what());
                continue;
            }
            for (const ElementSet& h : subgroups) {
                if (h.size() <= 1 || h.is_full() || is_normal(g, h)) continue;
                Question1Row row;
                row.group_spec = spec;
                row.subgroup_names = h.names();
                row.condition1 = condition1_holds(g, h);
                row.perfect_code = perfect_code_connection_exists(g, h, budget).verdict;
                if (!row.decided())
                    part.skipped.push_back(spec +
                                           ": search budget exhausted for a subgroup of size " +
                                           std::to_string(h.size()));
                else if (!row.agree())
                    part.disagreements.push_back(row);
                part.rows.push_back(std::move(row));
            }
        }
    });
    Question1Report report;
    for (Question1Report& part : partial) {
        for (auto& row : part.rows) report.rows.push_back(std::move(row));
        for (auto& row : part.disagreements) report.disagreements.push_back(std::move(row));
        for (auto& s : part.skipped) report.skipped.push_back(std::move(s));
    }
    return report;
}

}  // namespace regsets
