#pragma once

#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "group.hpp"

namespace regsets {

namespace detail {

inline std::string power_name(const std::string& sym, int exp) {
    if (exp == 0) return "";
    if (exp == 1) return sym;
    return sym + std::to_string(exp);
}

inline std::vector<int> flat_table(int n, const std::function<int(int, int)>& mul) {
    std::vector<int> t(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<size_t>(a) * n + b] = mul(a, b);
    return t;
}

}  // namespace detail

/// Cyclic group of order n; element k is named by its exponent "k".
inline GroupTable build_cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic: order must be >= 1");
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = std::to_string(i);
    return GroupTable(std::move(names),
                      detail::flat_table(n, [n](int a, int b) { return (a + b) % n; }),
                      /*check_associativity=*/false);
}

/// Dihedral group of order 2n: rotations e,r,...,r^{n-1} then reflections
/// f,rf,...,r^{n-1}f, with r^n = e, f^2 = e, f r f = r^{-1}.
inline GroupTable build_dihedral(int n) {
    if (n < 2) throw std::invalid_argument("dihedral: need n >= 2 (order 2n)");
    std::vector<std::string> names;
    names.reserve(2 * n);
    for (int i = 0; i < n; ++i) names.push_back(i == 0 ? "e" : detail::power_name("r", i));
    for (int i = 0; i < n; ++i) names.push_back(detail::power_name("r", i) + "f");
    auto mul = [n](int a, int b) {
        const int i = a % n, e1 = a / n;
        const int j = b % n, e2 = b / n;
        if (e1 == 0) return (i + j) % n + n * e2;
        return ((i - j) % n + n) % n + n * ((e1 + e2) % 2);
    };
    return GroupTable(std::move(names), detail::flat_table(2 * n, mul), false);
}

/// Generalized quaternion (dicyclic) group of order 4m:
/// <x,y | x^{2m} = e, y^2 = x^m, y^{-1}xy = x^{-1}>.
/// Elements x^0..x^{2m-1} then x^0 y..x^{2m-1} y.
inline GroupTable build_generalized_quaternion(int order) {
    if (order < 8 || order % 4 != 0)
        throw std::invalid_argument("genq: order must be a multiple of 4, at least 8");
    const int tm = order / 2;  // 2m
    const int m = order / 4;
    std::vector<std::string> names;
    names.reserve(order);
    for (int i = 0; i < tm; ++i) names.push_back(i == 0 ? "e" : detail::power_name("x", i));
    for (int i = 0; i < tm; ++i) names.push_back(detail::power_name("x", i) + "y");
    auto mul = [tm, m](int a, int b) {
        const int i = a % tm, e1 = a / tm;
        const int j = b % tm, e2 = b / tm;
        if (e1 == 0) return (i + j) % tm + tm * e2;
        if (e2 == 0) return ((i - j) % tm + tm) % tm + tm;
        return ((i - j + m) % tm + tm) % tm;
    };
    return GroupTable(std::move(names), detail::flat_table(order, mul), false);
}

/// The quaternion group {1,-1,i,-i,j,-j,k,-k} with i*j = k, j*i = -k.
inline GroupTable build_q8() {
    const std::vector<std::string> names{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
    // products of the units 1,i,j,k as (sign, unit)
    static constexpr int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr int sign[4][4] = {{+1, +1, +1, +1},
                                       {+1, -1, +1, -1},
                                       {+1, -1, -1, +1},
                                       {+1, +1, -1, -1}};
    auto mul = [](int a, int b) {
        const int ua = a / 2, ub = b / 2;
        const int s = sign[ua][ub] * (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1);
        return unit[ua][ub] * 2 + (s > 0 ? 0 : 1);
    };
    return GroupTable(names, detail::flat_table(8, mul), false);
}

/// Direct product; element (a,b) has index a*|B|+b and name "<a>.<b>".
inline GroupTable build_product(const GroupTable& a, const GroupTable& b) {
    const int na = a.order(), nb = b.order();
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(na) * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) names.push_back(a.name(i) + "." + b.name(j));
    auto mul = [&a, &b, nb](int p, int q) {
        const int i1 = p / nb, j1 = p % nb;
        const int i2 = q / nb, j2 = q % nb;
        return a.mul(i1, i2) * nb + b.mul(j1, j2);
    };
    return GroupTable(std::move(names), detail::flat_table(na * nb, mul), false);
}

namespace detail {

using Perm = std::vector<int>;

inline Perm compose(const Perm& p, const Perm& q) {  // (p*q)(t) = p(q(t))
    Perm r(p.size());
    for (size_t t = 0; t < p.size(); ++t) r[t] = p[q[t]];
    return r;
}

/// Parse cycle notation like "(1 2 3)(4 5)" over nonnegative integer points.
inline Perm parse_cycles(const std::string& text, int n_points) {
    Perm p(n_points);
    std::iota(p.begin(), p.end(), 0);
    size_t pos = 0;
    while (pos < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[pos]))) { ++pos; continue; }
        if (text[pos] != '(')
            throw std::invalid_argument("perm: expected '(' in cycle notation: " + text);
        const size_t close = text.find(')', pos);
        if (close == std::string::npos)
            throw std::invalid_argument("perm: unbalanced parenthesis in " + text);
        std::istringstream iss(text.substr(pos + 1, close - pos - 1));
        std::vector<int> cycle;
        int v;
        while (iss >> v) {
            if (v < 0 || v >= n_points)
                throw std::invalid_argument("perm: point out of range in " + text);
            cycle.push_back(v);
        }
        for (size_t i = 0; i < cycle.size(); ++i) {
            if (p[cycle[i]] != cycle[i])
                throw std::invalid_argument("perm: point repeated within a generator: " + text);
        }
        for (size_t i = 0; i + 1 < cycle.size(); ++i) p[cycle[i]] = cycle[i + 1];
        if (!cycle.empty()) p[cycle.back()] = cycle.front();
        pos = close + 1;
    }
    return p;
}

inline std::string cycle_name(const Perm& p) {
    std::string out;
    std::vector<char> done(p.size(), 0);
    for (size_t s = 0; s < p.size(); ++s) {
        if (done[s] || p[s] == static_cast<int>(s)) continue;
        out += '(';
        size_t cur = s;
        bool first = true;
        while (!done[cur]) {
            done[cur] = 1;
            if (!first) out += ' ';
            out += std::to_string(cur);
            first = false;
            cur = static_cast<size_t>(p[cur]);
        }
        out += ')';
    }
    return out.empty() ? "e" : out;
}

/// Split on commas that are not nested inside parentheses.
inline std::vector<std::string> split_top_level(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace detail

/// Permutation group generated by the given cycles ("(1 2 3)(4 5),(1 4)").
/// Elements are ordered lexicographically by one-line image, so the identity
/// comes first; names use disjoint cycle notation.
inline GroupTable build_from_permutations(const std::string& generators, int order_cap = 10000) {
    int max_point = -1;
    std::string digits;
    for (char c : generators) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            continue;
        }
        if (c != '(' && c != ')' && c != ' ' && c != ',')
            throw std::invalid_argument("perm: unexpected character in generator list");
        if (!digits.empty()) max_point = std::max(max_point, std::stoi(digits));
        digits.clear();
    }
    if (!digits.empty()) max_point = std::max(max_point, std::stoi(digits));
    if (max_point < 0) throw std::invalid_argument("perm: no generators given");
    const int n_points = max_point + 1;

    std::vector<detail::Perm> gens;
    for (const std::string& part : detail::split_top_level(generators))
        gens.push_back(detail::parse_cycles(part, n_points));

    std::set<detail::Perm> elems;
    detail::Perm id(n_points);
    std::iota(id.begin(), id.end(), 0);
    elems.insert(id);
    std::vector<detail::Perm> frontier{id};
    while (!frontier.empty()) {
        std::vector<detail::Perm> next;
        for (const auto& p : frontier)
            for (const auto& g : gens) {
                for (const auto& q : {detail::compose(p, g), detail::compose(g, p)}) {
                    if (elems.insert(q).second) {
                        next.push_back(q);
                        if (static_cast<int>(elems.size()) > order_cap)
                            throw std::invalid_argument("perm: generated group exceeds order cap");
                    }
                }
            }
        frontier = std::move(next);
    }

    // std::set orders lexicographically; identity is lexicographically least.
    std::vector<detail::Perm> sorted(elems.begin(), elems.end());
    std::map<detail::Perm, int> index;
    std::vector<std::string> names;
    for (size_t i = 0; i < sorted.size(); ++i) {
        index[sorted[i]] = static_cast<int>(i);
        names.push_back(detail::cycle_name(sorted[i]));
    }
    const int n = static_cast<int>(sorted.size());
    auto mul = [&](int a, int b) { return index.at(detail::compose(sorted[a], sorted[b])); };
    return GroupTable(std::move(names), detail::flat_table(n, mul), false);
}

/// Load a group table from JSON: {"order": n, "names": [..], "table": [[..]..]}.
/// The table is fully validated; element 0 must be the identity.
inline GroupTable load_group_table(std::istream& in, int associativity_cap = 256) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("group table file: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("order") || !j.contains("names") || !j.contains("table"))
        throw std::invalid_argument("group table file: expected keys order, names, table");
    const int n = j["order"].get<int>();
    auto names = j["names"].get<std::vector<std::string>>();
    if (static_cast<int>(names.size()) != n)
        throw std::invalid_argument("group table file: names length does not match order");
    auto rows = j["table"].get<std::vector<std::vector<int>>>();
    if (static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("group table file: table row count does not match order");
    std::vector<int> flat;
    flat.reserve(static_cast<size_t>(n) * n);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("group table file: ragged table row");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return GroupTable(std::move(names), std::move(flat), true, associativity_cap);
}

inline GroupTable load_group_table_file(const std::string& path, int associativity_cap = 256) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("group table file: cannot open '" + path + "'");
    return load_group_table(in, associativity_cap);
}

/// Build a group from a spec string:
///   cyclic:n | dihedral:n (order 2n) | genq:n (order n, 4 | n, n >= 8) | q8
///   | product(specA,specB) | perm:<generators in cycle notation> | table:<path>
inline GroupTable build_group(const std::string& spec) {
    auto parse_int = [&spec](const std::string& s) {
        try {
            size_t used = 0;
            const int v = std::stoi(s, &used);
            if (used != s.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw std::invalid_argument("group spec '" + spec + "': bad integer parameter");
        }
    };
    if (spec == "q8") return build_q8();
    if (spec.rfind("product(", 0) == 0) {
        if (spec.back() != ')')
            throw std::invalid_argument("group spec '" + spec + "': missing ')'");
        const std::string inner = spec.substr(8, spec.size() - 9);
        const auto parts = detail::split_top_level(inner);
        if (parts.size() != 2)
            throw std::invalid_argument("group spec '" + spec + "': product takes two specs");
        const GroupTable a = build_group(parts[0]);
        const GroupTable b = build_group(parts[1]);
        return build_product(a, b);
    }
    const size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("unknown group spec '" + spec + "'");
    const std::string family = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (family == "cyclic") return build_cyclic(parse_int(arg));
    if (family == "dihedral") return build_dihedral(parse_int(arg));
    if (family == "genq") return build_generalized_quaternion(parse_int(arg));
    if (family == "perm") return build_from_permutations(arg);
    if (family == "table") return load_group_table_file(arg);
    throw std::invalid_argument("unknown group family '" + family + "'");
}

/// Parse a comma-separated element-name list into a set.
inline ElementSet parse_element_set(const GroupTable& g, const std::string& list) {
    ElementSet s(g);
    if (list.empty()) return s;
    std::string cur;
    auto flush = [&] {
        // trim surrounding spaces
        size_t b = cur.find_first_not_of(' ');
        size_t e = cur.find_last_not_of(' ');
        if (b == std::string::npos) {
            cur.clear();
            return;
        }
        s.add(g.index_of(cur.substr(b, e - b + 1)));
        cur.clear();
    };
    int depth = 0;
    for (char c : list) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) flush();
        else cur += c;
    }
    flush();
    return s;
}

/// Parse generators and close them into a subgroup.
inline ElementSet parse_subgroup(const GroupTable& g, const std::string& generators) {
    return generate_subgroup(g, parse_element_set(g, generators));
}

}  // namespace regsets
