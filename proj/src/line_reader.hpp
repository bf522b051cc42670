#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "lgs/io.hpp"

namespace lgs::detail {

/// Line cursor over a text format; skips blank and comment-only lines.
struct LineReader {
    std::string file;
    std::istringstream in;
    int lineno = 0;
    std::vector<Token> toks;

    LineReader(const std::string& text, std::string f) : file(std::move(f)), in(text) {}

    /// next non-empty line; false at end of input
    bool next() {
        std::string line;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            toks = tokenize_line(line);
            if (!toks.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(int col, const std::string& msg) const { throw ParseError(file, lineno, col, msg); }
    [[noreturn]] void fail(const Token& t, const std::string& msg) const { fail(t.col, msg); }

    void arity(size_t n) const {
        if (toks.size() != n)
            fail(toks.size() > n ? toks[n].col : static_cast<int>(toks.back().col + toks.back().text.size()),
                 "'" + toks[0].text + "' expects " + std::to_string(n - 1) + " arguments");
    }

    int integer(size_t k, int lo, int hi, const std::string& what) const {
        const auto& t = toks.at(k);
        int v = 0;
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size()) fail(t, "expected an integer for " + what);
        if (v < lo || v > hi) fail(t, what + " " + t.text + " out of range [" + std::to_string(lo) + "," + std::to_string(hi) + "]");
        return v;
    }
};


}  // namespace lgs::detail
