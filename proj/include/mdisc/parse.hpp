#ifndef MDISC_PARSE_HPP
#define MDISC_PARSE_HPP

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace mdisc {

inline bool is_identifier(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

/// Validated ring declaration: non-empty, identifiers, no duplicates.
inline RingPtr declare_ring(std::vector<std::string> names) {
    if (names.empty()) throw StructuralError("ring declaration has no variables");
    for (const auto& n : names)
        if (!is_identifier(n)) throw StructuralError("invalid variable name '" + n + "'");
    return make_ring(std::move(names));
}

/// Splits "y1, y2,y3 ,t" and declares the ring.
inline RingPtr declare_ring(std::string_view comma_list) {
    std::vector<std::string> names;
    std::string cur;
    auto flush = [&] {
        std::size_t b = cur.find_first_not_of(" \t"), e = cur.find_last_not_of(" \t");
        names.push_back(b == std::string::npos ? std::string() : cur.substr(b, e - b + 1));
        cur.clear();
    };
    for (char ch : comma_list) {
        if (ch == ',') flush();
        else cur.push_back(ch);
    }
    flush();
    if (names.size() == 1 && names[0].empty()) names.clear();
    return declare_ring(std::move(names));
}

namespace detail {

// Recursive descent over
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' nat)?
//   base   := integer | integer '/' positive-integer | variable | '(' expr ')'
class Parser {
   public:
    static constexpr std::uint64_t kMaxExponent = 4096;

    Parser(RingPtr ring, std::string_view text) : ring_(std::move(ring)), text_(text) {}

    Polynomial run() {
        skip_ws();
        if (pos_ == text_.size()) throw ParseError("empty input", pos_);
        Polynomial p = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return p;
    }

   private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    Polynomial expr() {
        bool negate = false;
        if (peek() == '-') {
            negate = true;
            ++pos_;
        }
        Polynomial acc = term();
        if (negate) acc = -acc;
        for (char c = peek(); c == '+' || c == '-'; c = peek()) {
            ++pos_;
            Polynomial rhs = term();
            acc = (c == '+') ? acc + rhs : acc - rhs;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (peek() == '*') {
            ++pos_;
            acc = acc * factor();
        }
        return acc;
    }

    Polynomial factor() {
        Polynomial b = base();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            const std::size_t at = pos_;
            const std::string digits = read_digits();
            if (digits.empty()) throw ParseError("expected exponent after '^'", at);
            if (digits.size() > 6 || std::stoull(digits) > kMaxExponent)
                throw ParseError("exponent too large", at);
            b = pow(b, std::stoull(digits));
        }
        return b;
    }

    Polynomial base() {
        const char c = peek();
        const std::size_t at = pos_;
        if (c == '\0') throw ParseError("unexpected end of input", at);
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer num(read_digits(), 10);
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                const std::size_t den_at = pos_;
                const std::string den = read_digits();
                if (den.empty()) throw ParseError("division requires an integer denominator", den_at);
                Integer d(den, 10);
                if (d == 0) throw ParseError("zero denominator", den_at);
                return Polynomial::constant(ring_, make_rational(num, d));
            }
            return Polynomial::constant(ring_, Rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t end = pos_;
            while (end < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
                ++end;
            const std::string_view name = text_.substr(pos_, end - pos_);
            const auto idx = ring_->index_of(name);
            if (!idx) throw ParseError("unknown variable '" + std::string(name) + "'", at);
            pos_ = end;
            if (peek() == '/') throw ParseError("division requires integer operands", pos_);
            return Polynomial::variable(ring_, *idx);
        }
        if (c == '/') throw ParseError("division requires integer operands", at);
        throw ParseError(std::string("unexpected '") + c + "'", at);
    }

    std::string read_digits() {
        std::size_t end = pos_;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
        std::string s(text_.substr(pos_, end - pos_));
        pos_ = end;
        return s;
    }

    RingPtr ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse(const RingPtr& ring, std::string_view text) {
    return detail::Parser(ring, text).run();
}

inline std::string render_monomial(const Ring& ring, const Monomial& m) {
    std::string out;
    for (std::size_t i = 0; i < m.arity(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += ring.name(i);
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out;
}

/// Canonical text: grlex-descending terms, explicit '*' and '^'.
inline std::string render(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (first) {
            if (negative) out += '-';
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        const std::string mono = render_monomial(p.ring(), m);
        if (mono.empty()) {
            out += to_string(mag);
        } else {
            if (mag != 1) out += to_string(mag) + '*';
            out += mono;
        }
    }
    return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << render(p); }

}  // namespace mdisc

#endif  // MDISC_PARSE_HPP
