#pragma once

#include <string>
#include <variant>

#include "lgs/system.hpp"

namespace lgs {

/// Parse the `lgs <name> ... end` format. `file` is only used in diagnostics.
LambdaGraphSystem parse_lgs(const std::string& text, const std::string& file = "<input>");
/// Parse the `graph <name> ... end` format.
LabeledGraph parse_graph(const std::string& text, const std::string& file = "<input>");

std::string write_lgs(const LambdaGraphSystem& s);
std::string write_graph(const LabeledGraph& g);

std::string read_file(const std::string& path);

/// Load a file holding either format; graphs are expanded with from_labeled_graph(g, graph_depth).
LambdaGraphSystem load_system(const std::string& path, int graph_depth = 5);

/// Splits a line into whitespace separated tokens, recording 1-based columns.
struct Token {
    std::string text;
    int col = 1;
};
std::vector<Token> tokenize_line(const std::string& line);

}  // namespace lgs
