#include "lgs/common.hpp"

#include <algorithm>

namespace lgs {

namespace {

size_t code_points(std::string_view s) {
    return static_cast<size_t>(std::count_if(s.begin(), s.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    }));
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t k = 0; k < names_.size(); ++k) {
        const auto& n = names_[k];
        if (n.empty() || n.find('.') != std::string::npos)
            throw Error(ErrorKind::Structural, "invalid symbol name '" + n + "'");
        if (!index_.emplace(n, static_cast<int>(k)).second)
            throw Error(ErrorKind::Structural, "duplicate symbol '" + n + "'");
        if (code_points(n) != 1) single_char_ = false;
    }
}

int Alphabet::find(std::string_view name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

std::string Alphabet::format(const Word& w) const {
    if (w.empty()) return "ε";
    std::string out;
    for (size_t k = 0; k < w.size(); ++k) {
        if (!single_char_ && k > 0) out += '.';
        out += name(w[k]);
    }
    return out;
}

Word Alphabet::parse_word(std::string_view text) const {
    Word w;
    if (text.empty() || text == "ε") return w;
    if (text.find('.') != std::string_view::npos) {
        size_t start = 0;
        while (start <= text.size()) {
            size_t dot = text.find('.', start);
            auto tok = text.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start);
            int id = find(tok);
            if (id < 0) throw Error(ErrorKind::Parse, "unknown symbol '" + std::string(tok) + "'");
            w.push_back(id);
            if (dot == std::string_view::npos) break;
            start = dot + 1;
        }
        return w;
    }
    size_t pos = 0;
    while (pos < text.size()) {
        int best = -1;
        size_t best_len = 0;
        for (size_t k = 0; k < names_.size(); ++k) {
            const auto& n = names_[k];
            if (n.size() > best_len && text.substr(pos, n.size()) == n) {
                best = static_cast<int>(k);
                best_len = n.size();
            }
        }
        if (best < 0)
            throw Error(ErrorKind::Parse, "unknown symbol at offset " + std::to_string(pos) + " in '" +
                                              std::string(text) + "'");
        w.push_back(best);
        pos += best_len;
    }
    return w;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (size_t k = 0; k < parts.size(); ++k) {
        if (k) out += sep;
        out += parts[k];
    }
    return out;
}

}  // namespace lgs
