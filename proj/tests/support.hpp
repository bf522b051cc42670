#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lgs/algebra.hpp"
#include "lgs/code.hpp"
#include "lgs/equivalence.hpp"
#include "lgs/groupoid.hpp"
#include "lgs/io.hpp"
#include "lgs/language.hpp"
#include "lgs/sms.hpp"
#include "lgs/system.hpp"

namespace lgs::test {

std::string data_path(const std::string& name);
/// Graph files are expanded to `graph_depth`.
LambdaGraphSystem load(const std::string& name, int graph_depth = 5);
Certificate load_cert(const std::string& name, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2);

/// Strongly connected, left-resolving graph on `states` states over `symbols` letters.
LabeledGraph random_graph(std::mt19937_64& rng, int states, int symbols, int extra_edges);
/// Graphs with 1..4 states and 1..3 letters, reproducible from the seed.
std::vector<LabeledGraph> fuzz_graphs(std::uint64_t seed, int count);

/// Label sequences of length-k paths of the graph, by depth-first search.
std::set<Word> graph_words(const LabeledGraph& g, int k);
/// Label sequences of length-k paths from level 0, by depth-first search over the stored edges.
std::set<Word> path_words(const LambdaGraphSystem& s, int k);

/// Same system with edges(l) replaced.
LambdaGraphSystem with_edges(const LambdaGraphSystem& s, int l, std::vector<Edge> edges);
/// Same system with iota(l, j) = to.
LambdaGraphSystem with_iota(const LambdaGraphSystem& s, int l, int j, int to);

LabeledGraph relabel(const LabeledGraph& g, const std::vector<int>& perm);

/// Window-1 code of a graph system onto a relabeled copy; selectors are the edge targets.
OneSidedCode relabel_code(const LambdaGraphSystem& s1, const std::vector<int>& perm);
/// Window-1 code sending every cylinder to a random symbol with a random constant selector.
OneSidedCode random_code(std::mt19937_64& rng, const LambdaGraphSystem& s1, const LambdaGraphSystem& s2);

/// Monomials S_mu E_i^l S_nu^* of all admissible bisections with |mu|, |nu| <= l = d.
std::vector<Monomial> monomials(const LambdaGraphSystem& s, int d);

}  // namespace lgs::test
