#pragma once

#include <vector>

#include "lgs/system.hpp"

namespace lgs {

/// U(word, v_i^l) with |word| <= l.
struct Cylinder {
    Word word;
    VertexRef vertex;
    auto operator<=>(const Cylinder&) const = default;
};

/// Label sequences of length-k paths starting at level 0, sorted and deduplicated.
std::vector<Word> words(const LambdaGraphSystem& s, int k);
/// Same, with paths starting at `level`; needs level + k <= depth.
std::vector<Word> words_from_level(const LambdaGraphSystem& s, int k, int level);

/// All admissible (mu, v_i^l) with |mu| = k, sorted by (mu, i).
std::vector<Cylinder> cylinders(const LambdaGraphSystem& s, int k, int l);

/// Label sequences of length-d paths leaving v.
std::vector<Word> gamma_plus(const LambdaGraphSystem& s, VertexRef v, int d);

struct ConditionIReport {
    int d = 0;
    struct Entry {
        VertexRef vertex;
        int sequences = 0;  ///< |gamma_plus(v, d)|, capped at 2
        bool pass = false;
    };
    std::vector<Entry> entries;
    bool all_pass() const;
};

/// Finite-depth test of condition (I) on every vertex with level + d <= depth.
ConditionIReport check_condition_I(const LambdaGraphSystem& s, int d);

struct EssFreeReport {
    int m = 0, n = 0, d = 0;
    struct Entry {
        Cylinder cylinder;
        bool witnessed = false;
        Word extension;  ///< labels appended after the cylinder word, when witnessed
    };
    std::vector<Entry> entries;
    bool certified() const;
};

/**
 * @brief For every cylinder U(mu, v^d) with |mu| = d, search the truncation for an extension
 * whose labels break x_{m+j} = x_{n+j}. The shortest, then lexicographically least, witness is
 * reported. Needs m > n >= 0 and d + m <= depth.
 */
EssFreeReport check_essential_freeness(const LambdaGraphSystem& s, int m, int n, int d,
                                       Exec exec = Exec::Parallel);

}  // namespace lgs
