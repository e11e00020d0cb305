#ifndef MDISC_CDV_HPP
#define MDISC_CDV_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gcd.hpp"
#include "initial_form.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "quadratic_rank.hpp"

namespace mdisc::cdv {

// Variable roles are positional: G(y1, y2, y3, t).
inline constexpr std::size_t Y1 = 0, Y2 = 1, Y3 = 2, T = 3;

enum class Family { A, D, E };

struct DuValType {
    Family family = Family::A;
    int index = 1;

    std::string name() const {
        const char* f = family == Family::A ? "A" : family == Family::D ? "D" : "E";
        return f + std::to_string(index);
    }

    static DuValType from_name(const std::string& s) {
        if (s.size() < 2) throw StructuralError("bad Du Val type '" + s + "'");
        DuValType t;
        switch (s[0]) {
            case 'A': t.family = Family::A; break;
            case 'D': t.family = Family::D; break;
            case 'E': t.family = Family::E; break;
            default: throw StructuralError("bad Du Val type '" + s + "'");
        }
        try {
            t.index = std::stoi(s.substr(1));
        } catch (const std::exception&) {
            throw StructuralError("bad Du Val type '" + s + "'");
        }
        const bool ok = (t.family == Family::A && t.index >= 1) || (t.family == Family::D && t.index >= 4) ||
                        (t.family == Family::E && t.index >= 6 && t.index <= 8);
        if (!ok) throw StructuralError("Du Val index out of range in '" + s + "'");
        return t;
    }

    friend bool operator==(const DuValType&, const DuValType&) = default;
};

class NotNormalFormError : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
};

enum class TransformKind { complete_square, complete_cube, e7_shift, e8_y3_shift };

inline std::string to_string(TransformKind k) {
    switch (k) {
        case TransformKind::complete_square: return "complete_square";
        case TransformKind::complete_cube: return "complete_cube";
        case TransformKind::e7_shift: return "e7_shift";
        case TransformKind::e8_y3_shift: return "e8_y3_shift";
    }
    return "?";
}

inline TransformKind transform_kind_from(const std::string& s) {
    for (auto k : {TransformKind::complete_square, TransformKind::complete_cube, TransformKind::e7_shift,
                   TransformKind::e8_y3_shift})
        if (to_string(k) == s) return k;
    throw StructuralError("unknown transform kind '" + s + "'");
}

/// Coordinate change `variable -> replacement`.
struct TransformStep {
    TransformKind kind;
    std::size_t variable;
    Polynomial replacement;

    Polynomial apply(const Polynomial& g) const { return substitute(g, variable, replacement); }
};

/// One weighted substitution tried along the decision tree, on the equation
/// obtained after the first `transforms_applied` transforms.
struct StageRecord {
    std::string purpose;
    std::size_t transforms_applied = 0;
    WeightAssignment weights;
    std::int64_t order = 0;
    Polynomial phi;
    bool exponent_one = false;
};

struct CdvCertificate {
    Polynomial input;
    DuValType type;
    std::vector<TransformStep> transforms;
    std::vector<StageRecord> stages;
    std::optional<Rational> e8_root;  // a in y3^3 (y3 + a t)^2, when that branch ran
    BoundCertificate result;
};

// ---------------------------------------------------------------------------
// Helpers over the four-variable ring.

inline void require_cdv_ring(const Polynomial& g) {
    if (g.ring().size() != 4)
        throw PreconditionError("cDV analysis expects exactly four variables (y1, y2, y3, t)");
}

inline Polynomial var(const Polynomial& like, std::size_t i) { return Polynomial::variable(like.ring_ptr(), i); }

inline Rational coeff(const Polynomial& p, std::initializer_list<Monomial::Exponent> e) {
    return p.coefficient(Monomial(e));
}

struct SplitEquation {
    Polynomial f;
    Polynomial g;
};

/// G = f(y1, y2, y3) + t * g(y1, y2, y3, t).
inline SplitEquation split_f_g(const Polynomial& G) {
    require_cdv_ring(G);
    if (G.constant_term() != 0) throw PreconditionError("equation has a constant term");
    Polynomial f = substitute(G, T, Polynomial(G.ring_ptr()));
    Polynomial g = exact_div(G - f, var(G, T));
    return {std::move(f), std::move(g)};
}

inline Polynomial normal_form(const RingPtr& ring, DuValType type) {
    auto mono = [&](Monomial::Exponent a, Monomial::Exponent b, Monomial::Exponent c) {
        return Polynomial::term(ring, Monomial{a, b, c, 0}, 1);
    };
    const auto n = static_cast<Monomial::Exponent>(type.index);
    switch (type.family) {
        case Family::A: return mono(2, 0, 0) + mono(0, 2, 0) + mono(0, 0, n + 1);
        case Family::D: return mono(2, 0, 0) + mono(0, 1, 2) + mono(0, 0, n - 1);
        case Family::E:
            if (type.index == 6) return mono(2, 0, 0) + mono(0, 3, 0) + mono(0, 0, 4);
            if (type.index == 7) return mono(2, 0, 0) + mono(0, 3, 0) + mono(0, 1, 3);
            return mono(2, 0, 0) + mono(0, 3, 0) + mono(0, 0, 5);
    }
    throw StructuralError("unknown Du Val family");
}

/// Exact match against the unit-coefficient normal forms
///   A_n: y1^2 + y2^2 + y3^(n+1)     D_n: y1^2 + y2 y3^2 + y3^(n-1)
///   E6: y1^2 + y2^3 + y3^4   E7: y1^2 + y2^3 + y2 y3^3   E8: y1^2 + y2^3 + y3^5
inline DuValType classify_du_val(const Polynomial& f) {
    require_cdv_ring(f);
    if (f.depends_on(T)) throw PreconditionError("f must not involve t");
    std::optional<DuValType> guess;
    if (f.size() == 3) {
        Monomial::Exponent pure_y3 = 0;
        for (const auto& [m, c] : f.terms())
            if (m[Y1] == 0 && m[Y2] == 0) pure_y3 = m[Y3];
        if (coeff(f, {0, 2, 0, 0}) != 0 && pure_y3 >= 2)
            guess = DuValType{Family::A, static_cast<int>(pure_y3) - 1};
        else if (coeff(f, {0, 1, 2, 0}) != 0 && pure_y3 >= 3)
            guess = DuValType{Family::D, static_cast<int>(pure_y3) + 1};
        else if (coeff(f, {0, 3, 0, 0}) != 0)
            guess = pure_y3 == 4   ? DuValType{Family::E, 6}
                    : pure_y3 == 5 ? DuValType{Family::E, 8}
                                   : DuValType{Family::E, 7};
    }
    if (!guess || normal_form(f.ring_ptr(), *guess) != f)
        throw NotNormalFormError("f = " + render(f) +
                                 " is not a Du Val normal form; expected one of y1^2 + y2^2 + y3^(n+1), "
                                 "y1^2 + y2*y3^2 + y3^(n-1), y1^2 + y2^3 + y3^4, "
                                 "y1^2 + y2^3 + y2*y3^3, y1^2 + y2^3 + y3^5");
    return *guess;
}

struct TransformResult {
    Polynomial transformed;
    std::optional<TransformStep> step;  // empty: identity
};

/// Rank-1 quadratic part Q = (y1 + l)^2: shift y1 -> y1 - l so the quadratic
/// part becomes y1^2.
inline TransformResult complete_square(const Polynomial& G) {
    require_cdv_ring(G);
    const Polynomial Q = homogeneous_part(G, 2);
    if (coeff(Q, {2, 0, 0, 0}) != 1) throw PreconditionError("quadratic part must contain y1^2 with coefficient 1");
    if (quadratic_rank(G) != 1) throw PreconditionError("quadratic part must have rank 1");
    Polynomial ell(G.ring_ptr());
    for (std::size_t v : {Y2, Y3, T}) {
        Monomial m = Monomial::unit(4, Y1) * Monomial::unit(4, v);
        ell = ell + (Q.coefficient(m) / 2) * var(G, v);
    }
    if (pow(var(G, Y1) + ell, 2) != Q)
        throw PreconditionError("quadratic part " + render(Q) + " is not the square of y1 + linear form");
    if (ell.is_zero()) return {G, std::nullopt};
    TransformStep step{TransformKind::complete_square, Y1, var(G, Y1) - ell};
    Polynomial out = step.apply(G);
    if (homogeneous_part(out, 2) != pow(var(G, Y1), 2))
        throw InconsistencyError("complete_square left quadratic part " + render(homogeneous_part(out, 2)));
    return {std::move(out), std::move(step)};
}

/// Q(y2, y3, t): the part of g_2 free of y1.
inline Polynomial cube_q_part(const Polynomial& G) {
    const Polynomial g2 = homogeneous_part(split_f_g(G).g, 2);
    return filter_terms(g2, [](const Monomial& m) { return m[Y1] == 0; });
}

struct CubeResult {
    bool is_cube = false;
    Polynomial transformed;
    std::optional<TransformStep> step;
};

/// If y2^3 + t Q(y2, y3, t) = (y2 + a y3 + b t)^3, shift y2 -> y2 - a y3 - b t,
/// which clears Q. Otherwise reports is_cube = false and leaves G alone.
inline CubeResult complete_cube(const Polynomial& G) {
    require_cdv_ring(G);
    const Polynomial cubic = pow(var(G, Y2), 3) + var(G, T) * cube_q_part(G);
    const Rational alpha = coeff(cubic, {0, 2, 1, 0}) / 3;
    const Rational beta = coeff(cubic, {0, 2, 0, 1}) / 3;
    const Polynomial shift = alpha * var(G, Y3) + beta * var(G, T);
    if (pow(var(G, Y2) + shift, 3) != cubic) return {false, G, std::nullopt};
    if (shift.is_zero()) return {true, G, std::nullopt};
    TransformStep step{TransformKind::complete_cube, Y2, var(G, Y2) - shift};
    Polynomial out = step.apply(G);
    if (!cube_q_part(out).is_zero())
        throw InconsistencyError("complete_cube left Q = " + render(cube_q_part(out)) + " in " + render(out));
    return {true, std::move(out), std::move(step)};
}

/// L2(y3, t): from the monomials y1*y3 and y1*t of g_2.
inline Polynomial e7_l2_part(const Polynomial& G) {
    const Polynomial g2 = homogeneous_part(split_f_g(G).g, 2);
    return coeff(g2, {1, 0, 1, 0}) * var(G, Y3) + coeff(g2, {1, 0, 0, 1}) * var(G, T);
}

/// C2(y3, t): the part of g_3 involving only y3 and t.
inline Polynomial e7_c2_part(const Polynomial& G) {
    const Polynomial g3 = homogeneous_part(split_f_g(G).g, 3);
    return filter_terms(g3, [](const Monomial& m) { return m[Y1] == 0 && m[Y2] == 0; });
}

/// y1 -> y1 - (1/2) t L2(y3, t); afterwards L2 = C2 = 0. Only valid when the
/// (2,2,1) initial form is a perfect square.
inline TransformResult e7_shift(const Polynomial& G) {
    require_cdv_ring(G);
    const Polynomial l2 = e7_l2_part(G);
    if (l2.is_zero() && e7_c2_part(G).is_zero()) return {G, std::nullopt};
    TransformStep step{TransformKind::e7_shift, Y1, var(G, Y1) - Rational(1, 2) * var(G, T) * l2};
    Polynomial out = step.apply(G);
    if (!e7_l2_part(out).is_zero() || !e7_c2_part(out).is_zero())
        throw InconsistencyError("e7_shift did not clear L2 and C2; L2' = " + render(e7_l2_part(out)) +
                                 ", C2' = " + render(e7_c2_part(out)) + ", G' = " + render(out));
    return {std::move(out), std::move(step)};
}

inline WeightAssignment cdv_weights(std::int64_t a1, std::int64_t a2, std::int64_t a3) {
    return WeightAssignment{T, {a1, a2, a3}};
}

/// B(y3, t) = y3^5 + t F2(y3, t): the degree-5 part of G in y3 and t alone.
inline Polynomial e8_binary_quintic(const Polynomial& G) {
    return filter_terms(homogeneous_part(G, 5), [](const Monomial& m) { return m[Y1] == 0 && m[Y2] == 0; });
}

struct E8ShiftResult {
    Polynomial transformed;
    std::optional<TransformStep> step;
    Rational root;  // a in y3^3 (y3 + a t)^2 after the shift
};

/// When the (3,2,1) initial form has no exponent-one factor, B = M^2 N^3 with
/// N = y3 + alpha t; y3 -> y3 - alpha t brings B to y3^3 (y3 + a t)^2.
inline E8ShiftResult e8_y3_shift(const Polynomial& G) {
    require_cdv_ring(G);
    const auto init = weighted_order_and_initial(G, cdv_weights(3, 2, 1));
    if (!exponent_one_part(init.phi).is_constant())
        throw PreconditionError("(3,2,1) initial form already has an exponent-one factor");
    const Polynomial g3 = homogeneous_part(split_f_g(G).g, 3);
    const Polynomial p_part =
        filter_terms(g3, [](const Monomial& m) { return m[Y1] == 0 && m[Y2] == 1; });
    if (!p_part.is_zero())
        throw InconsistencyError("p(u3) != 0 although the (3,2,1) initial form " + render(init.phi) +
                                 " has no exponent-one factor; G = " + render(G));

    const Polynomial quintic = e8_binary_quintic(G);
    const SquarefreeDecomposition sd = squarefree_decompose(quintic);
    auto fail = [&](const std::string& why) {
        return InconsistencyError("binary quintic " + render(quintic) + " is not M^2 N^3 (" + why +
                                  "); G = " + render(G));
    };
    auto y3_monic = [&](const Polynomial& lin) {
        if (lin.total_degree() != 1) throw fail("non-linear factor");
        const Rational lead = coeff(lin, {0, 0, 1, 0});
        if (lead == 0) throw fail("factor proportional to t");
        return Rational(1) / lead * lin;
    };
    Polynomial squared(G.ring_ptr()), cubed(G.ring_ptr());
    if (sd.parts.size() == 2 && sd.parts[0].second == 2 && sd.parts[1].second == 3) {
        squared = y3_monic(sd.parts[0].first);
        cubed = y3_monic(sd.parts[1].first);
    } else if (sd.parts.size() == 1 && sd.parts[0].second == 5) {
        squared = cubed = y3_monic(sd.parts[0].first);
    } else {
        throw fail("unexpected multiplicities");
    }
    const Rational alpha = coeff(cubed, {0, 0, 0, 1});
    const Rational root = coeff(squared, {0, 0, 0, 1}) - alpha;

    std::optional<TransformStep> step;
    Polynomial out = G;
    if (alpha != 0) {
        step = TransformStep{TransformKind::e8_y3_shift, Y3, var(G, Y3) - alpha * var(G, T)};
        out = step->apply(G);
    }
    const Polynomial expected = pow(var(G, Y3), 3) * pow(var(G, Y3) + root * var(G, T), 2);
    if (e8_binary_quintic(out) != expected)
        throw InconsistencyError("after the y3 shift the quintic is " + render(e8_binary_quintic(out)) +
                                 ", expected " + render(expected));
    return {std::move(out), std::move(step), root};
}

inline bool is_perfect_square(const Polynomial& p) {
    if (p.is_zero()) return true;
    for (const auto& [f, k] : squarefree_decompose(p).parts)
        if (k % 2 != 0) return false;
    return true;
}

namespace detail {

class Walker {
   public:
    Walker(const Polynomial& input, DuValType type) : current_(input), cert_{input, type, {}, {}, std::nullopt,
                                                                          BoundCertificate{{}, 0, input, input, 0}} {}

    const Polynomial& current() const { return current_; }

    void apply(const TransformResult& r) {
        current_ = r.transformed;
        if (r.step) cert_.transforms.push_back(*r.step);
    }

    std::optional<BoundCertificate> stage(const std::string& purpose, const WeightAssignment& w) {
        InitialForm init = weighted_order_and_initial(current_, w);
        Polynomial f1 = exponent_one_part(init.phi);
        const bool ok = !f1.is_constant();
        cert_.stages.push_back(StageRecord{purpose, cert_.transforms.size(), w, init.order, init.phi, ok});
        if (!ok) return std::nullopt;
        return BoundCertificate{w, init.order, std::move(init.phi), std::move(f1), init.bound};
    }

    void record_shortcut(const BoundCertificate& c) {
        cert_.stages.push_back(StageRecord{"rank2_shortcut", cert_.transforms.size(), c.weights, c.order, c.phi, true});
    }

    void set_e8_root(const Rational& a) { cert_.e8_root = a; }

    [[noreturn]] void inconsistent(const std::string& why) const {
        throw InconsistencyError(why + "; type " + cert_.type.name() + ", current equation " + render(current_) +
                                 ", input " + render(cert_.input));
    }

    CdvCertificate finish(BoundCertificate result) {
        if (result.bound != 1) inconsistent("final bound is " + std::to_string(result.bound) + ", not 1");
        cert_.result = std::move(result);
        return std::move(cert_);
    }

   private:
    Polynomial current_;
    CdvCertificate cert_;
};

}  // namespace detail

/// Runs the cA / cD / cE case analysis and returns a replayable certificate
/// that the minimal discrepancy is at most 1. Every step the analysis proves
/// must succeed is re-checked; a failure raises InconsistencyError.
inline CdvCertificate certify(const Polynomial& G) {
    require_cdv_ring(G);
    if (G.is_zero()) throw StructuralError("the zero polynomial does not define a hypersurface");
    const auto [f, g] = split_f_g(G);
    const DuValType type = classify_du_val(f);
    if (g.constant_term() != 0) throw PreconditionError("g(0) != 0: the point is smooth");

    detail::Walker walk(G, type);
    auto shortcut = [&]() {
        auto c = rank2_shortcut(walk.current(), 3);
        if (!c) walk.inconsistent("rank2_shortcut found no bound");
        walk.record_shortcut(*c);
        return walk.finish(std::move(*c));
    };

    if (type.family == Family::A) {
        if (quadratic_rank(G) < 2) walk.inconsistent("cA point with quadratic rank < 2");
        return shortcut();
    }
    if (quadratic_rank(G) >= 2) return shortcut();
    walk.apply(complete_square(walk.current()));

    if (type.family == Family::D) {
        auto c = walk.stage("cD (2,1,1)", cdv_weights(2, 1, 1));
        if (!c) walk.inconsistent("cD initial form at (2,1,1) has no exponent-one factor");
        return walk.finish(std::move(*c));
    }

    if (auto c = walk.stage("cE cube test (2,1,1)", cdv_weights(2, 1, 1))) return walk.finish(std::move(*c));
    CubeResult cube = complete_cube(walk.current());
    if (!cube.is_cube) walk.inconsistent("(2,1,1) initial form fails but y2^3 + tQ is not a cube");
    walk.apply(TransformResult{cube.transformed, cube.step});

    if (type.index == 6) {
        auto c = walk.stage("cE6 (2,2,1)", cdv_weights(2, 2, 1));
        if (!c) walk.inconsistent("cE6 initial form at (2,2,1) has no exponent-one factor");
        return walk.finish(std::move(*c));
    }

    if (auto c = walk.stage("cE square test (2,2,1)", cdv_weights(2, 2, 1))) return walk.finish(std::move(*c));
    const auto sq = weighted_order_and_initial(walk.current(), cdv_weights(2, 2, 1));
    if (!is_perfect_square(sq.phi)) walk.inconsistent("(2,2,1) initial form fails but is not a perfect square");
    walk.apply(e7_shift(walk.current()));

    if (type.index == 7) {
        auto c = walk.stage("cE7 (3,2,1)", cdv_weights(3, 2, 1));
        if (!c) walk.inconsistent("cE7 initial form at (3,2,1) has no exponent-one factor");
        return walk.finish(std::move(*c));
    }

    if (auto c = walk.stage("cE8 quintic test (3,2,1)", cdv_weights(3, 2, 1))) return walk.finish(std::move(*c));
    E8ShiftResult e8 = e8_y3_shift(walk.current());
    walk.set_e8_root(e8.root);
    walk.apply(TransformResult{e8.transformed, e8.step});
    auto c = walk.stage("cE8 (3,2,2)", cdv_weights(3, 2, 2));
    if (!c) walk.inconsistent("cE8 initial form at (3,2,2) has no exponent-one factor");
    return walk.finish(std::move(*c));
}

struct VerifyReport {
    bool ok = true;
    std::string mismatch;  // first mismatch, empty when ok

    explicit operator bool() const { return ok; }
};

namespace detail {

inline std::size_t expected_variable(TransformKind k) {
    switch (k) {
        case TransformKind::complete_square:
        case TransformKind::e7_shift: return Y1;
        case TransformKind::complete_cube: return Y2;
        case TransformKind::e8_y3_shift: return Y3;
    }
    return Y1;
}

}  // namespace detail

/// Replays the certificate from scratch against G; every stored field must be
/// reproduced exactly.
inline VerifyReport verify_certificate(const Polynomial& G, const CdvCertificate& c) {
    auto bad = [](std::string why) { return VerifyReport{false, std::move(why)}; };
    try {
        if (G.ring().size() != 4) return bad("input is not in four variables");
        if (c.input != G) return bad("certificate input differs from the supplied polynomial");
        const DuValType type = classify_du_val(split_f_g(G).f);
        if (type != c.type) return bad("type mismatch: recomputed " + type.name() + ", stored " + c.type.name());

        std::vector<Polynomial> equations{G};
        for (std::size_t i = 0; i < c.transforms.size(); ++i) {
            const TransformStep& s = c.transforms[i];
            const std::string where = "transform " + std::to_string(i);
            if (s.variable != detail::expected_variable(s.kind)) return bad(where + ": wrong variable for its kind");
            if (!same_ring(s.replacement.ring_ptr(), G.ring_ptr())) return bad(where + ": replacement in another ring");
            const Polynomial tail = s.replacement - var(G, s.variable);
            if (tail.depends_on(s.variable) || tail.constant_term() != 0)
                return bad(where + ": not an origin-fixing triangular change");
            equations.push_back(s.apply(equations.back()));
        }

        for (std::size_t i = 0; i < c.stages.size(); ++i) {
            const StageRecord& st = c.stages[i];
            const std::string where = "stage " + std::to_string(i) + " (" + st.purpose + ")";
            if (st.transforms_applied >= equations.size()) return bad(where + ": transform count out of range");
            const auto init = weighted_order_and_initial(equations[st.transforms_applied], st.weights);
            if (init.order != st.order) return bad(where + ": weighted order differs");
            if (init.phi != st.phi) return bad(where + ": initial form differs");
            if (exponent_one_part(init.phi).is_constant() == st.exponent_one)
                return bad(where + ": exponent-one flag differs");
        }
        if (c.stages.empty()) return bad("no stages recorded");
        const StageRecord& last = c.stages.back();
        if (!last.exponent_one || last.weights != c.result.weights ||
            last.transforms_applied != c.transforms.size())
            return bad("last stage does not match the final bound");

        const auto replay = theorem1_bound(equations.back(), c.result.weights);
        if (!replay) return bad("final weights do not satisfy the exponent-one hypothesis");
        if (replay->order != c.result.order) return bad("A differs");
        if (replay->phi != c.result.phi) return bad("phi differs");
        if (replay->exponent_one != c.result.exponent_one) return bad("f1 differs");
        if (replay->bound != c.result.bound) return bad("d differs");
        if (c.result.bound != 1) return bad("d is not 1");

        if (c.e8_root) {
            const Polynomial& h = equations.back();
            const Polynomial expected = pow(var(h, Y3), 3) * pow(var(h, Y3) + *c.e8_root * var(h, T), 2);
            if (e8_binary_quintic(h) != expected) return bad("recorded e8 root does not match the quintic");
        }
    } catch (const Error& e) {
        return bad(std::string("replay raised: ") + e.what());
    }
    return {};
}

}  // namespace mdisc::cdv

#endif  // MDISC_CDV_HPP
