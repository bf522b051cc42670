#include <cctype>

#include "lgs/algebra.hpp"

namespace lgs {

namespace {

/// Recursive-descent parser; products are normalized as soon as a term is complete.
class ExprParser {
public:
    ExprParser(const Algebra& alg, const std::string& text) : alg_(alg), t_(text) {}

    Element parse() {
        skip();
        Element out;
        mpq_class sign = 1;
        if (peek() == '-' || peek() == '+') {
            sign = peek() == '-' ? -1 : 1;
            ++p_;
        }
        out.add(term(), sign);
        skip();
        while (p_ < t_.size()) {
            char c = t_[p_];
            if (c != '+' && c != '-') fail("expected '+' or '-'");
            ++p_;
            out.add(term(), c == '-' ? -1 : 1);
            skip();
        }
        return alg_.normalize(out);
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("<expr>", 1, static_cast<int>(p_) + 1, msg);
    }
    void skip() {
        while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
    }
    char peek() {
        skip();
        return p_ < t_.size() ? t_[p_] : '\0';
    }
    bool starts_factor() {
        char c = peek();
        return c == 'S' || c == 'E' || c == '1';
    }

    /// [rational '*'] factor+ ; a lone rational is read as a multiple of 1
    Element term() {
        mpq_class coeff = 1;
        bool have_factor = false;
        Element acc = alg_.one();
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            size_t start = p_;
            std::string num = digits();
            if (peek() == '/') {
                ++p_;
                skip();
                if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected a denominator");
                std::string den = digits();
                if (den.find_first_not_of('0') == std::string::npos) fail("zero denominator");
                num += "/" + den;
            }
            mpq_class q(num);
            q.canonicalize();
            if (peek() == '*') {
                ++p_;
                coeff = q;
            } else if (num == "1") {
                have_factor = true;  // the unit factor
            } else if (!starts_factor()) {
                return scaled(acc, q);
            } else {
                p_ = start;
                fail("expected '*' after the coefficient");
            }
        }
        while (starts_factor()) {
            acc = alg_.multiply(acc, factor());
            have_factor = true;
        }
        if (!have_factor) fail("expected a factor");
        return scaled(acc, coeff);
    }

    static Element scaled(const Element& e, const mpq_class& q) {
        Element out;
        out.add(e, q);
        return out;
    }

    std::string digits() {
        skip();
        size_t s = p_;
        while (p_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p_]))) ++p_;
        return t_.substr(s, p_ - s);
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++p_;
    }

    int integer() {
        std::string d = digits();
        if (d.empty()) fail("expected an integer");
        if (d.size() > 8) fail("integer too large");
        return std::stoi(d);
    }

    Element factor() {
        char c = peek();
        const size_t at = p_;
        if (c == '1') {
            ++p_;
            return alg_.one();
        }
        if (c == 'E') {
            ++p_;
            expect('(');
            int l = integer();
            expect(',');
            int i = integer();
            expect(')');
            return guarded(at, [&] { return alg_.E(l, i); });
        }
        ++p_;  // 'S'
        expect('(');
        size_t close = t_.find(')', p_);
        if (close == std::string::npos) fail("unterminated S(");
        std::string raw;
        for (size_t k = p_; k < close; ++k)
            if (!std::isspace(static_cast<unsigned char>(t_[k]))) raw += t_[k];
        const size_t word_at = p_;
        Word w;
        try {
            w = alg_.system().alphabet().parse_word(raw);
        } catch (const Error& e) {
            p_ = word_at;
            fail(e.what());
        }
        p_ = close + 1;
        bool star = false;
        // `S(w)^*` and `S(w)*` both denote the adjoint; juxtaposition is the product
        if (peek() == '^') {
            ++p_;
            expect('*');
            star = true;
        } else if (peek() == '*') {
            ++p_;
            star = true;
        }
        Element s = guarded(at, [&] { return alg_.S(w); });
        return star ? alg_.adjoint(s) : s;
    }

    template <class F>
    Element guarded(size_t at, F&& f) {
        try {
            return f();
        } catch (const DepthError&) {
            throw;
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            p_ = at;
            fail(e.what());
        }
    }

    const Algebra& alg_;
    const std::string& t_;
    size_t p_ = 0;
};

}  // namespace

Element parse_expression(const Algebra& alg, const std::string& text) { return ExprParser(alg, text).parse(); }

}  // namespace lgs
