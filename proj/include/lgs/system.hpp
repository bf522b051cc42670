#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "lgs/common.hpp"

namespace lgs {

/// Vertex v_i^l, 1-based index.
struct VertexRef {
    int level = 0;
    int index = 1;
    auto operator<=>(const VertexRef&) const = default;
};

/// Edge of E_{l,l+1}; src is an index at level l, tgt an index at level l+1.
struct Edge {
    int src = 1;
    int label = 0;
    int tgt = 1;
    auto operator<=>(const Edge&) const = default;
};

struct Violation {
    std::string rule;
    int level = 0;
    std::string location;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;
    bool has(const std::string& rule) const;
};

/**
 * @brief Truncated λ-graph system: levels 0..depth, labeled edges between consecutive
 * levels and the surjections iota from level l+1 onto level l.
 *
 * The constructor only checks that references are in range; the axioms are checked by
 * validate().
 */
class LambdaGraphSystem {
public:
    LambdaGraphSystem() = default;
    LambdaGraphSystem(std::string name, Alphabet alphabet, std::vector<int> sizes,
                      std::vector<std::vector<Edge>> edges, std::vector<std::vector<int>> iota);

    const std::string& name() const { return name_; }
    const Alphabet& alphabet() const { return alphabet_; }
    int depth() const { return static_cast<int>(sizes_.size()) - 1; }
    int size(int level) const { return sizes_.at(static_cast<size_t>(level)); }
    const std::vector<int>& sizes() const { return sizes_; }

    /// E_{l,l+1}
    const std::vector<Edge>& edges(int l) const { return edges_.at(static_cast<size_t>(l)); }
    /// iota_{l,l+1}(v_j^{l+1}) as an index at level l
    int iota(int l, int j) const { return iota_.at(static_cast<size_t>(l)).at(static_cast<size_t>(j - 1)); }
    const std::vector<std::vector<int>>& iota_maps() const { return iota_; }

    /// edge ids (into edges(l)) leaving v_i^l
    const std::vector<int>& out(int l, int i) const { return out_[static_cast<size_t>(l)][static_cast<size_t>(i - 1)]; }
    /// edge ids (into edges(l-1)) entering v_j^l, l >= 1
    const std::vector<int>& in(int l, int j) const { return in_[static_cast<size_t>(l)][static_cast<size_t>(j - 1)]; }
    /// indices j at level l+1 with iota(v_j^{l+1}) = v_i^l
    const std::vector<int>& children(int l, int i) const { return children_[static_cast<size_t>(l)][static_cast<size_t>(i - 1)]; }

    /// iota-projection of v_i^from down to level `to` (to <= from)
    int project(int from, int i, int to) const;
    /// all descendants of v_i^from at level `to` (to >= from), sorted
    std::vector<int> descendants(int from, int i, int to) const;

    /// Sources at level l-1 of edges labeled a into each vertex of `targets` (level l); sorted set.
    std::vector<int> sources(int l, const std::vector<int>& targets, int a) const;
    /// Targets at level l+1 of edges labeled a out of `from` (level l); sorted set.
    std::vector<int> targets(int l, const std::vector<int>& from, int a) const;

    /// Vertices at level l - |w| from which a path labeled w ends at v_i^l; empty if |w| > l.
    std::vector<int> backtrace(const Word& w, int l, int i) const;
    /// True when U(w, v_i^l) is nonempty: |w| <= l and some path labeled w ends at v_i^l.
    bool admissible(const Word& w, int l, int i) const;

    bool operator==(const LambdaGraphSystem& o) const;

private:
    void build_index();

    std::string name_;
    Alphabet alphabet_;
    std::vector<int> sizes_;
    std::vector<std::vector<Edge>> edges_;
    std::vector<std::vector<int>> iota_;
    std::vector<std::vector<std::vector<int>>> out_;
    std::vector<std::vector<std::vector<int>>> in_;
    std::vector<std::vector<std::vector<int>>> children_;
};

/// Finite labeled graph; states are 0-based internally and become 1-based vertices.
struct LabeledGraph {
    struct GEdge {
        int src = 0;
        int label = 0;
        int tgt = 0;
        auto operator<=>(const GEdge&) const = default;
    };
    std::string name;
    Alphabet alphabet;
    std::vector<std::string> states;
    std::vector<GEdge> edges;
};

struct LeftResolvingResult {
    bool ok = true;
    int level = -1;  ///< level l of E_{l,l+1} holding the colliding pair
    Edge first{};
    Edge second{};
};

struct TransitionMatrices {
    int rows = 0;
    int symbols = 0;
    int cols = 0;
    std::vector<unsigned char> a;  ///< rows*symbols*cols, row-major in (i, alpha, j)
    std::vector<unsigned char> i;  ///< rows*cols
    /// 1-based vertex indices, 0-based symbol
    int A(int r, int alpha, int c) const { return a[static_cast<size_t>(((r - 1) * symbols + alpha) * cols + (c - 1))]; }
    int I(int r, int c) const { return i[static_cast<size_t>((r - 1) * cols + (c - 1))]; }
};

ValidationReport validate(const LambdaGraphSystem& s, Exec exec = Exec::Parallel);

/// Local property with the roles of the two edge families swapped; used as a self-check.
bool local_property_swapped(const LambdaGraphSystem& s);

LeftResolvingResult is_left_resolving(const LambdaGraphSystem& s);
bool is_left_resolving(const LabeledGraph& g);

LambdaGraphSystem from_labeled_graph(const LabeledGraph& g, int depth);

/// Past-set presentation of the sofic shift of g; see README for the window semantics.
LambdaGraphSystem canonical_lgs(const LabeledGraph& g, int depth, int window);

TransitionMatrices transition_matrices(const LambdaGraphSystem& s, int l);

LambdaGraphSystem truncate(const LambdaGraphSystem& s, int d);

}  // namespace lgs
