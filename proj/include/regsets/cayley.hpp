#pragma once

#include "group.hpp"

namespace regsets {

/// Inverse-closed, identity-free subset of a group, usable as the connection
/// set of a Cayley graph.
class ConnectionSet {
public:
    ConnectionSet() = default;

    const GroupTable& group() const { return elems_.group(); }
    const ElementSet& elems() const { return elems_; }
    int size() const { return elems_.size(); }
    bool contains(int g) const { return elems_.contains(g); }

private:
    friend ConnectionSet make_connection_set(const GroupTable&, const ElementSet&);
    explicit ConnectionSet(ElementSet e) : elems_(std::move(e)) {}
    ElementSet elems_;
};

/// Validate and wrap a candidate connection set.
inline ConnectionSet make_connection_set(const GroupTable& g, const ElementSet& a) {
    if (a.contains(0))
        throw std::invalid_argument("connection set contains the identity '" + g.name(0) + "'");
    for (int x : a.elements())
        if (!a.contains(g.inv(x)))
            throw std::invalid_argument("connection set is not inverse-closed: missing inverse of '" +
                                        g.name(x) + "'");
    return ConnectionSet(a);
}

/// Cayley graph Cay(G,S): vertices are group elements, x ~ y iff y x^{-1} in S.
class CayleyGraph {
public:
    CayleyGraph(const GroupTable& g, ConnectionSet s) : group_(&g), connection_(std::move(s)) {
        if (&connection_.group() != &g)
            throw std::invalid_argument("connection set belongs to a different group");
    }

    const GroupTable& group() const { return *group_; }
    const ConnectionSet& connection() const { return connection_; }
    int order() const { return group_->order(); }
    int degree() const { return connection_.size(); }

    bool adjacent(int x, int y) const {
        return connection_.contains(group_->mul(y, group_->inv(x)));
    }

    /// Neighborhood of v, computed as S*v.
    ElementSet neighbors(int v) const {
        if (v < 0 || v >= order()) throw std::invalid_argument("vertex index out of range");
        ElementSet out(*group_);
        for (int s : connection_.elems().elements()) out.add(group_->mul(s, v));
        return out;
    }

private:
    const GroupTable* group_;
    ConnectionSet connection_;
};

inline CayleyGraph make_cayley_graph(const GroupTable& g, const ElementSet& s) {
    return CayleyGraph(g, make_connection_set(g, s));
}

/// Undirected edge list, each edge once with u < v, sorted.
inline std::vector<std::pair<int, int>> edge_list(const CayleyGraph& graph) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < graph.order(); ++v)
        for (int u : graph.neighbors(v).elements())
            if (v < u) edges.emplace_back(v, u);
    std::sort(edges.begin(), edges.end());
    return edges;
}

}  // namespace regsets
