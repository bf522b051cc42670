#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lgs {

/// A word is a sequence of symbol ids.
using Word = std::vector<int>;

/// Error categories, used by the CLI to choose an exit status.
enum class ErrorKind {
    Structural,  ///< malformed references inside an object
    Parse,       ///< text input could not be read
    Range,       ///< index or level out of range
    Depth,       ///< truncation depth is too small for the request
    Domain,      ///< precondition of an operation violated
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when a computation needs a level beyond the stored depth.
class DepthError : public Error {
public:
    DepthError(int needed, int depth, const std::string& what)
        : Error(ErrorKind::Depth, what + ": needs level " + std::to_string(needed) +
                                      " but depth is " + std::to_string(depth)),
          needed_(needed) {}
    int needed() const { return needed_; }

private:
    int needed_;
};

/// Raised by text parsers, carries a source position.
class ParseError : public Error {
public:
    ParseError(std::string file, int line, int col, const std::string& msg)
        : Error(ErrorKind::Parse, file + ":" + std::to_string(line) + ":" + std::to_string(col) +
                                      ": " + msg),
          line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

/// Symbol table with dense ids 0..size-1.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int id) const { return names_.at(static_cast<size_t>(id)); }
    const std::vector<std::string>& names() const { return names_; }
    /// -1 when absent
    int find(std::string_view name) const;

    /// Concatenated names, or dot separated when some name is longer than one code point.
    std::string format(const Word& w) const;
    /// Inverse of format. Accepts dots as separators and "e" / "ε" / "" for the empty word.
    /// Throws Error(Parse) on unknown symbols.
    Word parse_word(std::string_view text) const;

    bool operator==(const Alphabet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int, std::less<>> index_;
    bool single_char_ = true;
};

/// Execution policy for kernels that have a serial reference and an OpenMP version.
enum class Exec { Serial, Parallel };

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace lgs
