#ifndef MDISC_BLOWUP_HPP
#define MDISC_BLOWUP_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace mdisc::blowup {

using DivisorId = int;
using IdSet = std::vector<DivisorId>;  // sorted, no duplicates

struct Divisor {
    DivisorId id;
    Rational coefficient;
    bool over_point = false;

    friend bool operator==(const Divisor&, const Divisor&) = default;
};

inline IdSet normalized(IdSet s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline std::string to_string(const IdSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

/// Combinatorial data of an exceptional SNC configuration over a germ:
/// discrepancy coefficients, which subsets of divisors meet, and which
/// divisors lie over the point. Each recorded subset is one connected
/// stratum of codimension |I|; the empty set is implicitly recorded.
class BlowupState {
   public:
    /// Validates: n >= 2; ids distinct; every recorded subset refers to known
    /// ids and has |I| <= n; singletons present; downward closed; with an
    /// index r, coefficients are multiples of 1/r.
    BlowupState(int ambient_dim, std::vector<Divisor> divisors, std::set<IdSet> nonempty,
                std::optional<int> index = std::nullopt)
        : dim_(ambient_dim), divisors_(std::move(divisors)), index_(index) {
        if (dim_ < 2) throw StructuralError("ambient dimension must be at least 2");
        if (index_ && *index_ < 1) throw StructuralError("index must be positive");
        for (std::size_t i = 0; i < divisors_.size(); ++i)
            for (std::size_t j = i + 1; j < divisors_.size(); ++j)
                if (divisors_[i].id == divisors_[j].id)
                    throw StructuralError("duplicate divisor id " + std::to_string(divisors_[i].id));
        for (const auto& d : divisors_) check_index(d.coefficient);
        for (const auto& s : nonempty) {
            IdSet n = normalized(s);
            if (n.size() != s.size()) throw StructuralError("subset " + to_string(s) + " repeats an id");
            if (n.empty()) continue;
            for (DivisorId id : n)
                if (!find(id)) throw StructuralError("subset " + to_string(n) + " names unknown divisor");
            if (n.size() > static_cast<std::size_t>(dim_))
                throw StructuralError("subset " + to_string(n) + " larger than the ambient dimension");
            nonempty_.insert(std::move(n));
        }
        for (const auto& d : divisors_)
            if (!nonempty_.count(IdSet{d.id}))
                throw StructuralError("singleton {" + std::to_string(d.id) + "} missing from intersection data");
        for (const auto& s : nonempty_)
            for (std::size_t drop = 0; drop < s.size() && s.size() > 1; ++drop) {
                IdSet sub = s;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                if (!nonempty_.count(sub))
                    throw StructuralError("intersection data not downward closed: " + to_string(s) +
                                          " recorded but " + to_string(sub) + " is not");
            }
    }

    int ambient_dim() const noexcept { return dim_; }
    const std::vector<Divisor>& divisors() const noexcept { return divisors_; }
    const std::set<IdSet>& nonempty() const noexcept { return nonempty_; }
    std::optional<int> index() const noexcept { return index_; }

    const Divisor* find(DivisorId id) const {
        for (const auto& d : divisors_)
            if (d.id == id) return &d;
        return nullptr;
    }

    const Divisor& at(DivisorId id) const {
        if (const Divisor* d = find(id)) return *d;
        throw PreconditionError("no divisor with id " + std::to_string(id));
    }

    bool meets(const IdSet& s) const {
        IdSet n = normalized(s);
        return n.empty() || nonempty_.count(n) > 0;
    }

    DivisorId next_id() const {
        DivisorId m = 0;
        for (const auto& d : divisors_) m = std::max(m, d.id);
        return m + 1;
    }

   private:
    void check_index(const Rational& a) const {
        if (!index_) return;
        Rational scaled = a * *index_;
        if (!is_integer(scaled))
            throw StructuralError("coefficient " + mdisc::to_string(a) + " is not a multiple of 1/" +
                                  std::to_string(*index_));
    }

    int dim_;
    std::vector<Divisor> divisors_;
    std::set<IdSet> nonempty_;
    std::optional<int> index_;
};

inline BlowupState init_state(int ambient_dim, std::vector<Divisor> divisors, std::set<IdSet> nonempty,
                              std::optional<int> index = std::nullopt) {
    return BlowupState(ambient_dim, std::move(divisors), std::move(nonempty), index);
}

/// Smooth center of codimension r lying in exactly the divisors `touching`.
/// full_stratum: the center is the whole stratum of `touching` (r = |I|).
struct CenterSpec {
    IdSet touching;
    int codim = 2;
    bool full_stratum = false;
    std::optional<bool> over_point_override;  // consulted only when touching is empty
};

struct BlowupResult {
    BlowupState state;
    DivisorId new_id;
    Rational coefficient;
};

/// Exceptional divisor of the blow-up gets a' = (r - 1) + sum_{j in I} a_j and
/// lies over the point iff some divisor containing the center does.
inline BlowupResult blow_up(const BlowupState& s, const CenterSpec& c) {
    const IdSet I = normalized(c.touching);
    if (I.size() != c.touching.size()) throw PreconditionError("center repeats a divisor id");
    if (c.codim < 2) throw PreconditionError("center codimension must be at least 2");
    if (c.codim > s.ambient_dim()) throw PreconditionError("center codimension exceeds the ambient dimension");
    if (static_cast<std::size_t>(c.codim) < I.size())
        throw PreconditionError("a center of codimension r lies in at most r divisors");
    for (DivisorId id : I) s.at(id);
    if (!s.meets(I)) throw PreconditionError("divisors " + to_string(I) + " do not meet");
    if (c.full_stratum && (I.size() != static_cast<std::size_t>(c.codim) || I.size() < 2))
        throw PreconditionError("a full-stratum center needs codim = |touching| >= 2");

    Rational a = c.codim - 1;
    bool over = false;
    for (DivisorId id : I) {
        a += s.at(id).coefficient;
        over = over || s.at(id).over_point;
    }
    if (I.empty()) over = c.over_point_override.value_or(false);

    const DivisorId fresh = s.next_id();
    std::vector<Divisor> divisors = s.divisors();
    divisors.push_back(Divisor{fresh, a, over});

    std::set<IdSet> nonempty;
    for (const auto& k : s.nonempty()) {
        const bool contains_i = std::includes(k.begin(), k.end(), I.begin(), I.end());
        if (c.full_stratum && contains_i) continue;
        nonempty.insert(k);
    }
    // {new} u K for K subset of I with |K| <= r - 1
    const std::size_t subsets = std::size_t{1} << I.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        IdSet k{fresh};
        for (std::size_t b = 0; b < I.size(); ++b)
            if (mask & (std::size_t{1} << b)) k.push_back(I[b]);
        if (k.size() - 1 > static_cast<std::size_t>(c.codim - 1)) continue;
        nonempty.insert(normalized(std::move(k)));
    }
    // downward closure
    for (bool grew = true; grew;) {
        grew = false;
        std::set<IdSet> extra;
        for (const auto& k : nonempty)
            for (std::size_t drop = 0; drop < k.size() && k.size() > 1; ++drop) {
                IdSet sub = k;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                if (!nonempty.count(sub)) extra.insert(std::move(sub));
            }
        if (!extra.empty()) {
            grew = true;
            nonempty.insert(extra.begin(), extra.end());
        }
    }
    return {BlowupState(s.ambient_dim(), std::move(divisors), std::move(nonempty), s.index()), fresh, a};
}

struct WalkResult {
    BlowupState state;
    std::vector<Rational> coefficients;
};

/// Repeatedly blows up the intersection of the newest divisor with F_j,
/// starting from F_i. The coefficients follow a_m = a_i + m (1 + a_j), which
/// decreases without bound when a_j < -1.
inline WalkResult minus_infinity_walk(const BlowupState& s, DivisorId i, DivisorId j, int steps) {
    if (i == j) throw PreconditionError("walk needs two distinct divisors");
    if (steps < 0) throw PreconditionError("step count must be non-negative");
    const Divisor& di = s.at(i);
    const Divisor& dj = s.at(j);
    if (!s.meets(IdSet{std::min(i, j), std::max(i, j)})) throw PreconditionError("F_i and F_j do not meet");
    if (!di.over_point) throw PreconditionError("F_i must lie over the point");
    if (!(dj.coefficient < -1)) throw PreconditionError("walk requires a_j < -1");

    WalkResult out{s, {}};
    DivisorId cur = i;
    for (int m = 0; m < steps; ++m) {
        auto r = blow_up(out.state, CenterSpec{normalized({cur, j}), 2, true, std::nullopt});
        out.state = std::move(r.state);
        out.coefficients.push_back(r.coefficient);
        cur = r.new_id;
    }
    return out;
}

/// Smallest tracked coefficient, optionally only among divisors over the point.
inline std::optional<Rational> min_coefficient(const BlowupState& s, bool over_point_only) {
    std::optional<Rational> best;
    for (const auto& d : s.divisors()) {
        if (over_point_only && !d.over_point) continue;
        if (!best || d.coefficient < *best) best = d.coefficient;
    }
    return best;
}

/// Discrepancy of F' on a cover ramified to order t along F', given the
/// coefficient a of its image: t a + t - 1.
inline Rational index_cover_discrepancy(const Rational& a, std::int64_t t) {
    if (t < 1) throw PreconditionError("ramification index must be at least 1");
    return Rational(t) * a + Rational(t - 1);
}

}  // namespace mdisc::blowup

#endif  // MDISC_BLOWUP_HPP
