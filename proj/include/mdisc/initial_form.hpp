#ifndef MDISC_INITIAL_FORM_HPP
#define MDISC_INITIAL_FORM_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gcd.hpp"
#include "polynomial.hpp"
#include "quadratic_rank.hpp"

namespace mdisc {

/// Weights for the substitution y_i = t^(a_i) u_i, y_t = t. `weights` lists
/// a_i for every coordinate other than `t_index`, in ring order; the
/// designated coordinate has weight 1.
struct WeightAssignment {
    std::size_t t_index = 0;
    std::vector<std::int64_t> weights;

    std::int64_t weight_sum() const { return std::accumulate(weights.begin(), weights.end(), std::int64_t{0}); }

    /// Weight of every ring coordinate, t included.
    std::vector<std::int64_t> full(std::size_t ring_size) const {
        std::vector<std::int64_t> w(ring_size, 1);
        for (std::size_t i = 0, k = 0; i < ring_size; ++i)
            if (i != t_index) w[i] = weights.at(k++);
        return w;
    }

    void validate(std::size_t ring_size) const {
        if (ring_size < 2) throw PreconditionError("weighted substitution needs at least two coordinates");
        if (t_index >= ring_size) throw PreconditionError("t index out of range");
        if (weights.size() != ring_size - 1)
            throw PreconditionError("expected " + std::to_string(ring_size - 1) + " weights, got " +
                                    std::to_string(weights.size()));
        for (auto a : weights)
            if (a < 1) throw PreconditionError("weights must be positive integers");
    }

    friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;
};

/// Minimal weighted order A, the initial form phi (coefficient of t^A after
/// substitution, a polynomial in u1..un), and d = sum(a_i) - A.
struct InitialForm {
    std::int64_t order = 0;
    Polynomial phi;
    std::int64_t bound = 0;
};

/// A certified upper bound: phi has a multiplicity-one irreducible factor,
/// whose product is recorded in `exponent_one`.
struct BoundCertificate {
    WeightAssignment weights;
    std::int64_t order = 0;
    Polynomial phi;
    Polynomial exponent_one;
    std::int64_t bound = 0;
};

inline std::int64_t weighted_degree(const Monomial& m, const std::vector<std::int64_t>& full_weights) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < m.arity(); ++i) s += full_weights[i] * static_cast<std::int64_t>(m[i]);
    return s;
}

/// Ring of the initial form: u1..un, one per non-t coordinate.
inline RingPtr initial_form_ring(std::size_t ambient_size) { return make_indexed_ring("u", ambient_size - 1); }

namespace detail {

inline void require_germ_equation(const Polynomial& g) {
    if (g.is_zero()) throw StructuralError("the zero polynomial does not define a hypersurface");
    if (g.constant_term() != 0) throw PreconditionError("equation has a constant term; the origin is not on it");
}

}  // namespace detail

inline InitialForm weighted_order_and_initial(const Polynomial& g, const WeightAssignment& w, const RingPtr& u_ring) {
    detail::require_germ_equation(g);
    const std::size_t n = g.ring().size();
    w.validate(n);
    const auto full = w.full(n);
    std::int64_t order = std::numeric_limits<std::int64_t>::max();
    for (const auto& [m, c] : g.terms()) order = std::min(order, weighted_degree(m, full));

    Polynomial::TermMap phi_terms;
    for (const auto& [m, c] : g.terms()) {
        if (weighted_degree(m, full) != order) continue;
        std::vector<Monomial::Exponent> e;
        e.reserve(n - 1);
        for (std::size_t i = 0; i < n; ++i)
            if (i != w.t_index) e.push_back(m[i]);
        // distinct minimal-weight monomials differ outside t, so no collisions
        phi_terms.emplace(Monomial(std::move(e)), c);
    }
    return InitialForm{order, Polynomial(u_ring, std::move(phi_terms)), w.weight_sum() - order};
}

inline InitialForm weighted_order_and_initial(const Polynomial& g, const WeightAssignment& w) {
    return weighted_order_and_initial(g, w, initial_form_ring(g.ring().size()));
}

/// Empty when phi has no irreducible factor of multiplicity one; no bound is
/// claimed for that weight.
inline std::optional<BoundCertificate> theorem1_bound(const Polynomial& g, const WeightAssignment& w) {
    InitialForm init = weighted_order_and_initial(g, w);
    Polynomial f1 = exponent_one_part(init.phi);
    if (f1.is_constant()) return std::nullopt;
    return BoundCertificate{w, init.order, std::move(init.phi), std::move(f1), init.bound};
}

/// True when g has zero constant and linear parts and a nonzero quadratic part.
inline bool has_multiplicity_two(const Polynomial& g) {
    if (g.is_zero()) return false;
    bool quadratic = false;
    for (const auto& [m, c] : g.terms()) {
        if (m.degree() < 2) return false;
        if (m.degree() == 2) quadratic = true;
    }
    return quadratic;
}

/// Blow-up of the origin (all weights 1) for a multiplicity-2 germ of rank
/// at least 2: phi is the dehomogenized quadratic part, d = n - 2. The
/// designated coordinate is tried last-first.
inline std::optional<BoundCertificate> rank2_shortcut(const Polynomial& g, std::size_t n) {
    if (g.ring().size() != n + 1)
        throw PreconditionError("ambient dimension n must equal the variable count minus one");
    if (!has_multiplicity_two(g)) throw PreconditionError("equation does not have multiplicity 2");
    if (quadratic_rank(g) < 2) return std::nullopt;
    for (std::size_t k = 0; k <= n; ++k) {
        const std::size_t t = n - k;
        WeightAssignment w{t, std::vector<std::int64_t>(n, 1)};
        auto cert = theorem1_bound(g, w);
        if (cert && cert->bound == static_cast<std::int64_t>(n) - 2) return cert;
    }
    throw InconsistencyError("rank >= 2 but no coordinate choice gives an exponent-one initial form");
}

namespace detail {

/// Calls visit(w) for each weight vector of length `len` with entries >= 1
/// and sum <= budget, in lexicographic order.
inline void enumerate_weights(std::size_t len, std::int64_t budget,
                              const std::function<void(const std::vector<std::int64_t>&)>& visit) {
    std::vector<std::int64_t> w(len, 1);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t remaining) {
        if (i == len) {
            visit(w);
            return;
        }
        const auto reserve = static_cast<std::int64_t>(len - i - 1);
        for (std::int64_t a = 1; a + reserve <= remaining; ++a) {
            w[i] = a;
            rec(i + 1, remaining - a);
        }
    };
    rec(0, budget);
}

}  // namespace detail

/// Exhaustive application of the bound over every designated coordinate and
/// every weight vector with sum <= budget. Returns the smallest d; ties go
/// to the lexicographically smallest (t_index, weights).
inline std::optional<BoundCertificate> weight_search(const Polynomial& g, std::int64_t budget) {
    detail::require_germ_equation(g);
    if (budget < 1) throw PreconditionError("weight budget must be positive");
    const std::size_t n = g.ring().size();
    if (n < 2) throw PreconditionError("weighted substitution needs at least two coordinates");
    const RingPtr u_ring = initial_form_ring(n);
    std::optional<BoundCertificate> best;
    for (std::size_t t = 0; t < n; ++t) {
        detail::enumerate_weights(n - 1, budget, [&](const std::vector<std::int64_t>& a) {
            WeightAssignment w{t, a};
            InitialForm init = weighted_order_and_initial(g, w, u_ring);
            // enumeration is in tie-break order, so only strict improvements count
            if (best && init.bound >= best->bound) return;
            Polynomial f1 = exponent_one_part(init.phi);
            if (f1.is_constant()) return;
            best = BoundCertificate{w, init.order, std::move(init.phi), std::move(f1), init.bound};
        });
    }
    return best;
}

}  // namespace mdisc

#endif  // MDISC_INITIAL_FORM_HPP
