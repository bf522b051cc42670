#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lgs/system.hpp"

namespace lgs {

/// Matrix whose entries are formal sums of symbols, stored as per-symbol counts.
class SymbolicMatrix {
public:
    SymbolicMatrix() = default;
    SymbolicMatrix(int rows, int cols, int symbols)
        : rows_(rows), cols_(cols), symbols_(symbols),
          counts_(static_cast<size_t>(rows) * static_cast<size_t>(cols) * static_cast<size_t>(symbols), 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int symbols() const { return symbols_; }

    /// multiplicity of symbol a in entry (i, j); 1-based i, j
    int count(int i, int j, int a) const { return counts_[offset(i, j) + static_cast<size_t>(a)]; }
    void add(int i, int j, int a, int times = 1) { counts_[offset(i, j) + static_cast<size_t>(a)] += times; }
    /// entry (i, j) as a count vector over the alphabet
    std::vector<int> entry(int i, int j) const;
    bool entry_empty(int i, int j) const;

    bool operator==(const SymbolicMatrix&) const = default;

private:
    size_t offset(int i, int j) const {
        return (static_cast<size_t>(i - 1) * static_cast<size_t>(cols_) + static_cast<size_t>(j - 1)) *
               static_cast<size_t>(symbols_);
    }
    int rows_ = 0, cols_ = 0, symbols_ = 0;
    std::vector<int> counts_;
};

struct ZeroOneMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<unsigned char> v;  ///< row-major

    ZeroOneMatrix() = default;
    ZeroOneMatrix(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * static_cast<size_t>(c), 0) {}
    int at(int i, int j) const { return v[static_cast<size_t>((i - 1) * cols + (j - 1))]; }
    void set(int i, int j, int x) { v[static_cast<size_t>((i - 1) * cols + (j - 1))] = static_cast<unsigned char>(x); }
    bool operator==(const ZeroOneMatrix&) const = default;
};

/// (M_{l,l+1}, I_{l,l+1}) for l = 0..depth-1.
struct SymbolicMatrixSystem {
    std::string name;
    Alphabet alphabet;
    std::vector<SymbolicMatrix> M;
    std::vector<ZeroOneMatrix> I;

    int depth() const { return static_cast<int>(M.size()); }
    bool operator==(const SymbolicMatrixSystem&) const = default;
};

SymbolicMatrixSystem from_lgs(const LambdaGraphSystem& s);

struct CompatibilityLevel {
    int level = 0;  ///< checks M_{l,l+1} I_{l+1,l+2} = I_{l,l+1} M_{l+1,l+2}
    bool ok = true;
    int row = 0, col = 0;              ///< first mismatching entry, 1-based
    std::vector<int> left, right;      ///< both sides at that entry
};

struct CompatibilityReport {
    std::vector<CompatibilityLevel> levels;
    bool ok() const;
    /// first failing level, or -1
    int first_failure() const;
};

/// Throws Error(Structural) when the dimension chain is broken.
CompatibilityReport verify_compatibility(const SymbolicMatrixSystem& sms, Exec exec = Exec::Parallel);

/// Inverse of from_lgs. Rejects incompatible systems, non-functional I, repeated symbols and axiom failures.
LambdaGraphSystem to_lgs(const SymbolicMatrixSystem& sms);

/// `a+b` style entry, `0` when empty.
std::string format_entry(const Alphabet& alpha, const std::vector<int>& counts);
std::string dump_sms(const SymbolicMatrixSystem& sms);
SymbolicMatrixSystem parse_sms(const std::string& text, const std::string& file = "<input>");

}  // namespace lgs
