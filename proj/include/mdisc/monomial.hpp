#ifndef MDISC_MONOMIAL_HPP
#define MDISC_MONOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace mdisc {

/// Exponent vector of fixed arity; the arity is that of the owning ring.
class Monomial {
   public:
    using Exponent = std::uint32_t;

    Monomial() = default;
    explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
    explicit Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {}
    Monomial(std::initializer_list<Exponent> exps) : exps_(exps) {}

    static Monomial unit(std::size_t arity, std::size_t var, Exponent e = 1) {
        Monomial m(arity);
        m.exps_[var] = e;
        return m;
    }

    std::size_t arity() const noexcept { return exps_.size(); }
    Exponent operator[](std::size_t i) const { return exps_[i]; }
    const std::vector<Exponent>& exponents() const noexcept { return exps_; }

    std::uint64_t degree() const {
        return std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
    }

    bool is_one() const {
        return std::all_of(exps_.begin(), exps_.end(), [](Exponent e) { return e == 0; });
    }

    bool divides(const Monomial& other) const {
        for (std::size_t i = 0; i < exps_.size(); ++i)
            if (exps_[i] > other.exps_[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& other) const {
        Monomial r(*this);
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
        return r;
    }

    /// Requires divides(other) from the right: returns other / *this.
    Monomial quotient_of(const Monomial& other) const {
        Monomial r(other);
        for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
        return r;
    }

    Monomial with(std::size_t var, Exponent e) const {
        Monomial r(*this);
        r.exps_[var] = e;
        return r;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;

   private:
    std::vector<Exponent> exps_;
};

/// Graded lexicographic order, first variable largest. `GrlexGreater` sorts
/// the leading monomial first.
inline bool grlex_less(const Monomial& a, const Monomial& b) {
    const auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.exponents().begin(), a.exponents().end(),
                                        b.exponents().begin(), b.exponents().end());
}

struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

}  // namespace mdisc

#endif  // MDISC_MONOMIAL_HPP
