#ifndef MDISC_GCD_HPP
#define MDISC_GCD_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "polynomial.hpp"

namespace mdisc {

/// Returns r with r * q == p, or throws NotDivisibleError. Multivariate
/// division by leading terms under grlex: if q divides p, every leading
/// monomial of the running remainder is divisible by lm(q).
inline Polynomial exact_div(const Polynomial& p, const Polynomial& q) {
    Polynomial::require_same_ring(p, q);
    if (q.is_zero()) throw PreconditionError("division by the zero polynomial");
    const Monomial& lmq = q.leading_monomial();
    const Rational& lcq = q.leading_coefficient();
    Polynomial quotient(p.ring_ptr());
    Polynomial rem = p;
    while (!rem.is_zero()) {
        const Monomial lmr = rem.leading_monomial();
        if (!lmq.divides(lmr)) throw NotDivisibleError("divisor does not divide dividend");
        const Monomial shift = lmq.quotient_of(lmr);
        const Rational c = rem.leading_coefficient() / lcq;
        quotient.add_scaled_shifted(Polynomial::constant(p.ring_ptr(), Rational(1)), c, shift);
        rem.add_scaled_shifted(q, -c, shift);
    }
    return quotient;
}

/// Positive rational c such that p / c has coprime integer coefficients.
inline Rational rational_content(const Polynomial& p) {
    if (p.is_zero()) return Rational(0);
    Integer num = 0, den = 1;
    for (const auto& [m, c] : p.terms()) {
        num = gcd_of(num, c.get_num());
        den = lcm_of(den, c.get_den());
    }
    return make_rational(num, den);
}

/// Primitive over the integers with positive leading coefficient (grlex).
/// Zero stays zero.
inline Polynomial normalize(const Polynomial& p) {
    if (p.is_zero()) return p;
    Rational c = rational_content(p);
    if (p.leading_coefficient() < 0) c = -c;
    return Rational(1) / c * p;
}

namespace detail {

/// Highest-index variable occurring in p, if any.
inline std::optional<std::size_t> main_variable(const Polynomial& p) {
    for (std::size_t v = p.ring().size(); v-- > 0;)
        if (p.depends_on(v)) return v;
    return std::nullopt;
}

inline Polynomial leading_coefficient_in(const Polynomial& p, std::size_t var) {
    return coefficients_in(p, var).back();
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, in `var`.
inline Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
    const auto db = b.degree_in(var);
    const Polynomial lcb = leading_coefficient_in(b, var);
    Polynomial r = a;
    std::int64_t pending = static_cast<std::int64_t>(a.degree_in(var)) - static_cast<std::int64_t>(db) + 1;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        const auto k = r.degree_in(var) - db;
        const Polynomial lcr = leading_coefficient_in(r, var);
        r = lcb * r - lcr * Polynomial::term(r.ring_ptr(), Monomial::unit(r.ring().size(), var, k), 1) * b;
        --pending;
    }
    if (pending > 0) r = pow(lcb, static_cast<std::uint64_t>(pending)) * r;
    return r;
}

inline Polynomial gcd_recursive(const Polynomial& p, const Polynomial& q);

/// gcd of the coefficients of p in `var`.
inline Polynomial content_in(const Polynomial& p, std::size_t var) {
    Polynomial g(p.ring_ptr());
    for (const auto& c : coefficients_in(p, var)) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize(c) : gcd_recursive(g, c);
        if (g.is_constant()) return Polynomial::constant(p.ring_ptr(), 1);
    }
    return g;
}

/// gcd of two polynomials that are primitive with respect to `var` and both
/// of positive degree in it. Subresultant PRS (Collins / Brown).
inline Polynomial subresultant_gcd(Polynomial a, Polynomial b, std::size_t var) {
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
    Polynomial g = Polynomial::constant(a.ring_ptr(), 1);
    Polynomial h = g;
    for (;;) {
        const auto delta = a.degree_in(var) - b.degree_in(var);
        Polynomial r = pseudo_remainder(a, b, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) return Polynomial::constant(a.ring_ptr(), 1);
        a = std::move(b);
        b = exact_div(r, g * pow(h, delta));
        g = leading_coefficient_in(a, var);
        if (delta == 1) {
            h = g;
        } else if (delta > 1) {
            h = exact_div(pow(g, delta), pow(h, delta - 1));
        }
    }
    return normalize(exact_div(b, content_in(b, var)));
}

/// gcd of nonzero p, q; result normalized.
inline Polynomial gcd_recursive(const Polynomial& p, const Polynomial& q) {
    if (p.is_constant() || q.is_constant()) return Polynomial::constant(p.ring_ptr(), 1);
    const auto vp = main_variable(p), vq = main_variable(q);
    const std::size_t var = std::max(*vp, *vq);
    const bool in_p = p.depends_on(var), in_q = q.depends_on(var);
    if (!in_p) return gcd_recursive(p, content_in(q, var));
    if (!in_q) return gcd_recursive(content_in(p, var), q);
    const Polynomial cp = content_in(p, var);
    const Polynomial cq = content_in(q, var);
    const Polynomial c = gcd_recursive(cp, cq);
    const Polynomial h = subresultant_gcd(exact_div(p, cp), exact_div(q, cq), var);
    return normalize(c * h);
}

/// Heuristic gcd over the integers (Char, Geddes, Gonnet): evaluate one
/// variable at a large integer xi, recurse, rebuild the candidate from its
/// symmetric xi-adic digits and accept it only if it divides both inputs.
/// Inputs have integer coefficients; nullopt when every attempt fails.
namespace heu {

inline Integer max_norm(const Polynomial& p) {
    Integer m = 0;
    for (const auto& [mono, c] : p.terms())
        if (abs(c.get_num()) > m) m = abs(c.get_num());
    return m;
}

inline Integer integer_content(const Polynomial& p) {
    Integer g = 0;
    for (const auto& [m, c] : p.terms()) g = gcd_of(g, c.get_num());
    return g;
}

inline Polynomial evaluate_at(const Polynomial& p, std::size_t var, const Integer& xi) {
    Polynomial::TermMap out;
    for (const auto& [m, c] : p.terms()) {
        std::vector<Monomial::Exponent> e = m.exponents();
        Integer power;
        mpz_pow_ui(power.get_mpz_t(), xi.get_mpz_t(), e[var]);
        e[var] = 0;
        out[Monomial(std::move(e))] += c * Rational(power);
    }
    return Polynomial(p.ring_ptr(), std::move(out));
}

inline Polynomial interpolate(const Polynomial& h, std::size_t var, const Integer& xi) {
    Polynomial::TermMap out;
    const Integer half = xi / 2;
    for (const auto& [m, c] : h.terms()) {
        Integer rest = c.get_num();
        for (Monomial::Exponent i = 0; rest != 0; ++i) {
            Integer d;
            mpz_fdiv_r(d.get_mpz_t(), rest.get_mpz_t(), xi.get_mpz_t());
            if (d > half) d -= xi;
            if (d != 0) {
                std::vector<Monomial::Exponent> e = m.exponents();
                e[var] = i;
                out[Monomial(std::move(e))] += Rational(d);
            }
            rest = (rest - d) / xi;
        }
    }
    return Polynomial(h.ring_ptr(), std::move(out));
}

inline bool divides(const Polynomial& d, const Polynomial& p) {
    try {
        exact_div(p, d);
        return true;
    } catch (const NotDivisibleError&) {
        return false;
    }
}

inline std::optional<Polynomial> gcd_z(const Polynomial& f0, const Polynomial& g0) {
    const Integer cf = integer_content(f0), cg = integer_content(g0);
    const Integer c = gcd_of(cf, cg);
    const Polynomial f = Rational(1) / Rational(cf) * f0;
    const Polynomial g = Rational(1) / Rational(cg) * g0;
    if (f.is_constant() || g.is_constant()) return Polynomial::constant(f.ring_ptr(), Rational(c));

    const auto vf = main_variable(f), vg = main_variable(g);
    const std::size_t var = std::max(vf.value_or(0), vg.value_or(0));
    Integer xi = 2 * std::min(max_norm(f), max_norm(g)) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
        const Polynomial fx = evaluate_at(f, var, xi);
        const Polynomial gx = evaluate_at(g, var, xi);
        if (!fx.is_zero() && !gx.is_zero()) {
            if (const auto h = gcd_z(fx, gx)) {
                const Polynomial candidate = normalize(interpolate(*h, var, xi));
                if (!candidate.is_zero() && divides(candidate, f) && divides(candidate, g))
                    return Rational(c) * candidate;
            }
        }
        xi = xi * 73794 / 27011;
    }
    return std::nullopt;
}

}  // namespace heu

}  // namespace detail

/// Greatest common divisor, normalized (primitive over Z, positive leading
/// coefficient). gcd(p, 0) = normalize(p).
inline Polynomial gcd(const Polynomial& p, const Polynomial& q) {
    Polynomial::require_same_ring(p, q);
    if (p.is_zero()) return normalize(q);
    if (q.is_zero()) return normalize(p);
    const Polynomial a = normalize(p), b = normalize(q);
    if (const auto h = detail::heu::gcd_z(a, b)) return normalize(*h);
    return detail::gcd_recursive(a, b);
}

struct SquarefreeDecomposition {
    Rational unit;
    std::vector<std::pair<Polynomial, std::uint64_t>> parts;  // increasing multiplicity

    Polynomial reconstruct(const RingPtr& ring) const {
        Polynomial r = Polynomial::constant(ring, unit);
        for (const auto& [f, k] : parts) r = r * pow(f, k);
        return r;
    }
};

namespace detail {

/// Yun's algorithm in `var` for p primitive in var with positive degree.
inline void yun_in(const Polynomial& p, std::size_t var, std::map<std::uint64_t, Polynomial>& out) {
    const Polynomial dp = partial_derivative(p, var);
    const Polynomial c = gcd(p, dp);
    Polynomial w = exact_div(p, c);
    Polynomial y = exact_div(dp, c);
    Polynomial z = y - partial_derivative(w, var);
    for (std::uint64_t i = 1; !w.is_constant(); ++i) {
        const Polynomial g = gcd(w, z);
        if (!g.is_constant()) {
            auto [it, inserted] = out.try_emplace(i, g);
            if (!inserted) it->second = it->second * g;
        }
        w = exact_div(w, g);
        y = exact_div(z, g);
        z = y - partial_derivative(w, var);
    }
}

inline void squarefree_rec(const Polynomial& p, std::map<std::uint64_t, Polynomial>& out) {
    if (p.is_constant()) return;
    const std::size_t var = *main_variable(p);
    const Polynomial c = content_in(p, var);
    yun_in(exact_div(p, c), var, out);
    squarefree_rec(c, out);
}

}  // namespace detail

/// Squarefree decomposition over characteristic zero: unit * prod f_k^k.
/// Factors are normalized; within a multiplicity, factors are multiplied
/// together.
inline SquarefreeDecomposition squarefree_decompose(const Polynomial& p) {
    if (p.is_zero()) throw StructuralError("squarefree decomposition of the zero polynomial");
    std::map<std::uint64_t, Polynomial> by_mult;
    detail::squarefree_rec(normalize(p), by_mult);
    SquarefreeDecomposition sd{Rational(1), {}};
    for (auto& [k, f] : by_mult) sd.parts.emplace_back(normalize(f), k);
    const Polynomial prod = sd.reconstruct(p.ring_ptr());
    sd.unit = p.leading_coefficient() / prod.leading_coefficient();
    return sd;
}

/// Product of the irreducible factors of p that occur with multiplicity
/// exactly one, without factoring:
///   g  = gcd(p, dp/dx_1, ..., dp/dx_m)   (= prod p_i^(e_i - 1))
///   s  = p / g                            (squarefree part)
///   f1 = s / gcd(s, g)
/// Normalized; a constant result means no such factor exists.
inline Polynomial exponent_one_part(const Polynomial& p) {
    if (p.is_zero()) throw StructuralError("exponent-one part of the zero polynomial");
    if (p.is_constant()) return Polynomial::constant(p.ring_ptr(), 1);
    Polynomial g = normalize(p);
    for (std::size_t v = 0; v < p.ring().size() && !g.is_constant(); ++v)
        g = gcd(g, partial_derivative(p, v));
    const Polynomial s = exact_div(p, g);
    return normalize(exact_div(s, gcd(s, g)));
}

}  // namespace mdisc

#endif  // MDISC_GCD_HPP
