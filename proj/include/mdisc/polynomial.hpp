#ifndef MDISC_POLYNOMIAL_HPP
#define MDISC_POLYNOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "monomial.hpp"
#include "rational.hpp"

namespace mdisc {

/// Ordered list of variable names. Position is meaning: variable i of a
/// polynomial is exponent slot i of each monomial.
class Ring {
   public:
    explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw StructuralError("duplicate variable '" + names_[i] + "' in ring");
    }

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    friend bool operator==(const Ring&, const Ring&) = default;

   private:
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
    return std::make_shared<const Ring>(std::move(names));
}

/// Ring u1, ..., un used for initial forms.
inline RingPtr make_indexed_ring(const std::string& stem, std::size_t n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
    return make_ring(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

/// Sparse polynomial with rational coefficients. Terms are kept in a map
/// sorted by decreasing grlex order; no stored coefficient is zero, so equal
/// polynomials have equal term maps.
class Polynomial {
   public:
    using TermMap = std::map<Monomial, Rational, GrlexGreater>;

    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {
        if (!ring_) throw StructuralError("polynomial without ring");
    }

    Polynomial(RingPtr ring, TermMap terms) : Polynomial(std::move(ring)) {
        for (auto it = terms.begin(); it != terms.end();) {
            if (it->first.arity() != ring_->size())
                throw StructuralError("monomial arity does not match ring");
            it = (it->second == 0) ? terms.erase(it) : std::next(it);
        }
        terms_ = std::move(terms);
    }

    static Polynomial constant(RingPtr ring, const Rational& c) {
        Polynomial p(std::move(ring));
        if (c != 0) p.terms_.emplace(Monomial(p.ring_->size()), c);
        return p;
    }

    static Polynomial variable(RingPtr ring, std::size_t var) {
        if (var >= ring->size()) throw StructuralError("variable index out of range");
        return term(ring, Monomial::unit(ring->size(), var), Rational(1));
    }

    static Polynomial term(RingPtr ring, Monomial m, const Rational& c) {
        Polynomial p(std::move(ring));
        if (m.arity() != p.ring_->size()) throw StructuralError("monomial arity does not match ring");
        if (c != 0) p.terms_.emplace(std::move(m), c);
        return p;
    }

    const Ring& ring() const noexcept { return *ring_; }
    const RingPtr& ring_ptr() const noexcept { return ring_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
    }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }
    Rational constant_term() const { return coefficient(Monomial(ring_->size())); }

    const Monomial& leading_monomial() const {
        require_nonzero("leading monomial");
        return terms_.begin()->first;
    }
    const Rational& leading_coefficient() const {
        require_nonzero("leading coefficient");
        return terms_.begin()->second;
    }

    /// Total degree; the zero polynomial has none.
    std::uint64_t total_degree() const {
        require_nonzero("degree");
        return terms_.begin()->first.degree();  // grlex: leading term has max degree
    }

    std::uint64_t degree_in(std::size_t var) const {
        require_nonzero("degree");
        check_var(var);
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max<std::uint64_t>(d, m[var]);
        return d;
    }

    bool depends_on(std::size_t var) const {
        check_var(var);
        for (const auto& [m, c] : terms_)
            if (m[var] != 0) return true;
        return false;
    }

    void check_var(std::size_t var) const {
        if (var >= ring_->size()) throw StructuralError("variable index out of range");
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
    }

    friend Polynomial operator-(const Polynomial& p) {
        Polynomial r(p);
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        require_same_ring(a, b);
        Polynomial r(a);
        r.add_scaled(b, Rational(1));
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        require_same_ring(a, b);
        Polynomial r(a);
        r.add_scaled(b, Rational(-1));
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        require_same_ring(a, b);
        Polynomial r(a.ring_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.accumulate(ma * mb, ca * cb);
        return r;
    }

    friend Polynomial operator*(const Rational& s, const Polynomial& p) {
        Polynomial r(p.ring_);
        if (s == 0) return r;
        r.terms_ = p.terms_;
        for (auto& [m, c] : r.terms_) c *= s;
        return r;
    }
    friend Polynomial operator*(const Polynomial& p, const Rational& s) { return s * p; }

    /// this + scale * monomial * q, in place. Used by division routines.
    void add_scaled_shifted(const Polynomial& q, const Rational& scale, const Monomial& shift) {
        for (const auto& [m, c] : q.terms_) accumulate(m * shift, c * scale);
    }

    static void require_same_ring(const Polynomial& a, const Polynomial& b) {
        if (!same_ring(a.ring_, b.ring_)) throw StructuralError("operands belong to different rings");
    }

   private:
    void require_nonzero(const char* what) const {
        if (terms_.empty()) throw StructuralError(std::string(what) + " of the zero polynomial");
    }

    void accumulate(const Monomial& m, const Rational& c) {
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void add_scaled(const Polynomial& q, const Rational& s) {
        for (const auto& [m, c] : q.terms_) accumulate(m, c * s);
    }

    RingPtr ring_;
    TermMap terms_;
};

inline Polynomial pow(const Polynomial& p, std::uint64_t e) {
    Polynomial result = Polynomial::constant(p.ring_ptr(), Rational(1));
    Polynomial base = p;
    while (e > 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e > 0) base = base * base;
    }
    return result;
}

inline Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
    p.check_var(var);
    Polynomial::TermMap out;
    for (const auto& [m, c] : p.terms()) {
        if (m[var] == 0) continue;
        out.emplace(m.with(var, m[var] - 1), c * m[var]);
    }
    return Polynomial(p.ring_ptr(), std::move(out));
}

/// Coefficients of p viewed as a univariate polynomial in `var`; entry k is
/// the coefficient of var^k (a polynomial of the same ring, free of var).
inline std::vector<Polynomial> coefficients_in(const Polynomial& p, std::size_t var) {
    p.check_var(var);
    std::vector<Polynomial::TermMap> buckets;
    for (const auto& [m, c] : p.terms()) {
        if (buckets.size() <= m[var]) buckets.resize(m[var] + 1);
        buckets[m[var]].emplace(m.with(var, 0), c);
    }
    std::vector<Polynomial> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.emplace_back(p.ring_ptr(), std::move(b));
    return out;
}

/// Replace variable `var` by `replacement` everywhere in p.
inline Polynomial substitute(const Polynomial& p, std::size_t var, const Polynomial& replacement) {
    Polynomial::require_same_ring(p, replacement);
    const auto coeffs = coefficients_in(p, var);
    Polynomial result(p.ring_ptr());
    Polynomial power = Polynomial::constant(p.ring_ptr(), Rational(1));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) power = power * replacement;
        if (!coeffs[k].is_zero()) result = result + coeffs[k] * power;
    }
    return result;
}

inline Polynomial homogeneous_part(const Polynomial& p, std::uint64_t degree) {
    Polynomial::TermMap out;
    for (const auto& [m, c] : p.terms())
        if (m.degree() == degree) out.emplace(m, c);
    return Polynomial(p.ring_ptr(), std::move(out));
}

/// Terms whose monomials satisfy `keep`.
template <class Pred>
Polynomial filter_terms(const Polynomial& p, Pred keep) {
    Polynomial::TermMap out;
    for (const auto& [m, c] : p.terms())
        if (keep(m)) out.emplace(m, c);
    return Polynomial(p.ring_ptr(), std::move(out));
}

/// Moves p into `target`; variable i of p becomes variable var_map[i].
inline Polynomial embed(const Polynomial& p, RingPtr target, std::span<const std::size_t> var_map) {
    if (var_map.size() != p.ring().size()) throw StructuralError("embedding map has wrong arity");
    Polynomial::TermMap out;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Exponent> e(target->size(), 0);
        for (std::size_t i = 0; i < var_map.size(); ++i) {
            if (var_map[i] >= target->size()) throw StructuralError("embedding target out of range");
            e[var_map[i]] += m[i];
        }
        out.emplace(Monomial(std::move(e)), c);
    }
    return Polynomial(std::move(target), std::move(out));
}

inline Rational evaluate(const Polynomial& p, std::span<const Rational> point) {
    if (point.size() != p.ring().size()) throw StructuralError("evaluation point has wrong arity");
    Rational sum = 0;
    for (const auto& [m, c] : p.terms()) {
        Rational v = c;
        for (std::size_t i = 0; i < point.size(); ++i) {
            Rational f;
            mpz_pow_ui(f.get_num_mpz_t(), point[i].get_num_mpz_t(), m[i]);
            mpz_pow_ui(f.get_den_mpz_t(), point[i].get_den_mpz_t(), m[i]);
            v *= f;
        }
        sum += v;
    }
    return sum;
}

}  // namespace mdisc

#endif  // MDISC_POLYNOMIAL_HPP
