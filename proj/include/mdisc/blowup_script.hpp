#ifndef MDISC_BLOWUP_SCRIPT_HPP
#define MDISC_BLOWUP_SCRIPT_HPP

#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blowup.hpp"
#include "errors.hpp"
#include "rational.hpp"

namespace mdisc::blowup {

struct BlowEvent {
    DivisorId id;
    Rational coefficient;
    bool over_point;
};

struct WalkEvent {
    DivisorId i, j;
    std::vector<Rational> coefficients;
};

struct QueryEvent {
    bool over_only;
    std::optional<Rational> minimum;
};

struct ScriptEvent {
    std::size_t line;
    std::variant<BlowEvent, WalkEvent, QueryEvent> payload;
};

struct ScriptResult {
    std::vector<ScriptEvent> events;
    std::optional<BlowupState> final_state;
};

namespace detail {

struct ScriptLine {
    std::string op;
    std::vector<std::string> positional;
    std::map<std::string, std::string> keys;
};

[[noreturn]] inline void script_fail(std::size_t line, std::size_t offset, const std::string& what) {
    throw ParseError("script line " + std::to_string(line) + ": " + what, offset);
}

inline ScriptLine split_line(std::string_view text, std::size_t line, std::size_t offset) {
    ScriptLine out;
    std::istringstream is{std::string(text)};
    std::string tok;
    while (is >> tok) {
        if (out.op.empty()) {
            out.op = tok;
            continue;
        }
        const auto eq = tok.find('=');
        if (eq == std::string::npos) {
            out.positional.push_back(tok);
            continue;
        }
        std::string key = tok.substr(0, eq);
        if (key.empty()) script_fail(line, offset, "empty key in '" + tok + "'");
        if (!out.keys.emplace(key, tok.substr(eq + 1)).second)
            script_fail(line, offset, "repeated key '" + key + "'");
    }
    return out;
}

inline long long parse_int(std::string_view s, std::size_t line, std::size_t offset) {
    long long v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (s.empty() || ec != std::errc{} || p != end) script_fail(line, offset, "expected an integer, got '" + std::string(s) + "'");
    return v;
}

inline bool parse_flag(std::string_view s, std::size_t line, std::size_t offset) {
    if (s == "0") return false;
    if (s == "1") return true;
    script_fail(line, offset, "expected 0 or 1, got '" + std::string(s) + "'");
}

inline IdSet parse_ids(std::string_view s, std::size_t line, std::size_t offset) {
    IdSet ids;
    if (s.empty()) return ids;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        const auto piece = s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        ids.push_back(static_cast<DivisorId>(parse_int(piece, line, offset)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return ids;
}

inline void allow_keys(const ScriptLine& l, std::initializer_list<std::string_view> allowed, std::size_t line,
                       std::size_t offset) {
    for (const auto& [k, v] : l.keys) {
        bool ok = false;
        for (auto a : allowed) ok = ok || a == k;
        if (!ok) script_fail(line, offset, "unexpected key '" + k + "' for '" + l.op + "'");
    }
}

inline const std::string& need(const ScriptLine& l, const std::string& key, std::size_t line, std::size_t offset) {
    auto it = l.keys.find(key);
    if (it == l.keys.end()) script_fail(line, offset, "'" + l.op + "' needs " + key + "=");
    return it->second;
}

}  // namespace detail

/// Runs a line-oriented blow-up script. `divisor` and `meet` lines declare the
/// state opened by the last `state` line; the first operation freezes it.
/// `meet` records the listed intersection and all of its subsets.
inline ScriptResult run_script(std::string_view script) {
    using namespace detail;
    ScriptResult result;

    struct Pending {
        int dim;
        std::optional<int> index;
        std::vector<Divisor> divisors;
        std::set<IdSet> nonempty;
    };
    std::optional<Pending> pending;
    std::optional<BlowupState> state;

    auto current = [&](std::size_t line, std::size_t offset) -> BlowupState& {
        if (pending) {
            state.emplace(pending->dim, std::move(pending->divisors), std::move(pending->nonempty), pending->index);
            pending.reset();
        }
        if (!state) script_fail(line, offset, "no 'state' line before the first operation");
        return *state;
    };

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= script.size()) {
        const auto nl = script.find('\n', pos);
        const std::size_t end = nl == std::string_view::npos ? script.size() : nl;
        std::string_view text = script.substr(pos, end - pos);
        const std::size_t offset = pos;
        ++line_no;
        pos = end + 1;
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        ScriptLine l = split_line(text, line_no, offset);
        if (l.op.empty()) {
            if (nl == std::string_view::npos) break;
            continue;
        }
        try {
            if (l.op == "state") {
                allow_keys(l, {"n", "index"}, line_no, offset);
                Pending p{static_cast<int>(parse_int(need(l, "n", line_no, offset), line_no, offset)), std::nullopt, {}, {}};
                if (l.keys.count("index"))
                    p.index = static_cast<int>(parse_int(l.keys.at("index"), line_no, offset));
                if (!l.positional.empty()) script_fail(line_no, offset, "unexpected argument to 'state'");
                state.reset();
                // validate dimension and index eagerly
                BlowupState(p.dim, {}, {}, p.index);
                pending = std::move(p);
            } else if (l.op == "divisor" || l.op == "meet") {
                if (!pending) script_fail(line_no, offset, "'" + l.op + "' must follow 'state' and precede operations");
                if (l.op == "divisor") {
                    allow_keys(l, {"coeff", "over"}, line_no, offset);
                    if (l.positional.size() != 1) script_fail(line_no, offset, "'divisor' takes one id");
                    const auto id = static_cast<DivisorId>(parse_int(l.positional[0], line_no, offset));
                    const bool over = l.keys.count("over") ? parse_flag(l.keys.at("over"), line_no, offset) : false;
                    const std::string& coeff = need(l, "coeff", line_no, offset);
                    Rational a;
                    try {
                        a = parse_rational(coeff);
                    } catch (const Error&) {
                        script_fail(line_no, offset, "bad coefficient '" + coeff + "'");
                    }
                    pending->divisors.push_back(Divisor{id, a, over});
                    pending->nonempty.insert(IdSet{id});
                } else {
                    allow_keys(l, {}, line_no, offset);
                    if (l.positional.size() != 1) script_fail(line_no, offset, "'meet' takes one id list");
                    const IdSet ids = parse_ids(l.positional[0], line_no, offset);
                    const IdSet n = normalized(ids);
                    if (n.size() != ids.size()) script_fail(line_no, offset, "'meet' repeats an id");
                    if (n.size() > 16) script_fail(line_no, offset, "'meet' lists too many ids");
                    for (std::size_t mask = 1; mask < (std::size_t{1} << n.size()); ++mask) {
                        IdSet sub;
                        for (std::size_t b = 0; b < n.size(); ++b)
                            if (mask & (std::size_t{1} << b)) sub.push_back(n[b]);
                        pending->nonempty.insert(std::move(sub));
                    }
                }
            } else if (l.op == "blow") {
                allow_keys(l, {"touching", "codim", "full", "over"}, line_no, offset);
                if (!l.positional.empty()) script_fail(line_no, offset, "unexpected argument to 'blow'");
                CenterSpec c;
                c.touching = parse_ids(need(l, "touching", line_no, offset), line_no, offset);
                c.codim = static_cast<int>(parse_int(need(l, "codim", line_no, offset), line_no, offset));
                c.full_stratum = parse_flag(need(l, "full", line_no, offset), line_no, offset);
                if (l.keys.count("over")) c.over_point_override = parse_flag(l.keys.at("over"), line_no, offset);
                BlowupState& s = current(line_no, offset);
                auto r = blow_up(s, c);
                const bool over = r.state.at(r.new_id).over_point;
                result.events.push_back({line_no, BlowEvent{r.new_id, r.coefficient, over}});
                s = std::move(r.state);
            } else if (l.op == "walk") {
                allow_keys(l, {"i", "j", "steps"}, line_no, offset);
                if (!l.positional.empty()) script_fail(line_no, offset, "unexpected argument to 'walk'");
                const auto i = static_cast<DivisorId>(parse_int(need(l, "i", line_no, offset), line_no, offset));
                const auto j = static_cast<DivisorId>(parse_int(need(l, "j", line_no, offset), line_no, offset));
                const auto steps = parse_int(need(l, "steps", line_no, offset), line_no, offset);
                if (steps < 0 || steps > 100000) script_fail(line_no, offset, "steps out of range");
                BlowupState& s = current(line_no, offset);
                auto w = minus_infinity_walk(s, i, j, static_cast<int>(steps));
                result.events.push_back({line_no, WalkEvent{i, j, std::move(w.coefficients)}});
                s = std::move(w.state);
            } else if (l.op == "query") {
                allow_keys(l, {}, line_no, offset);
                const bool over = l.positional.size() == 2 && l.positional[1] == "over";
                if (l.positional.empty() || l.positional[0] != "min" || (l.positional.size() == 2 && !over) ||
                    l.positional.size() > 2)
                    script_fail(line_no, offset, "expected 'query min [over]'");
                const BlowupState& s = current(line_no, offset);
                result.events.push_back({line_no, QueryEvent{over, min_coefficient(s, over)}});
            } else {
                script_fail(line_no, offset, "unknown directive '" + l.op + "'");
            }
        } catch (const ParseError&) {
            throw;
        } catch (const StructuralError& e) {
            throw StructuralError("script line " + std::to_string(line_no) + ": " + e.what());
        } catch (const PreconditionError& e) {
            throw PreconditionError("script line " + std::to_string(line_no) + ": " + e.what());
        }
        if (nl == std::string_view::npos) break;
    }
    if (pending) current(line_no, 0);
    result.final_state = state;
    return result;
}

inline std::string event_text(const ScriptEvent& e) {
    std::ostringstream os;
    if (const auto* b = std::get_if<BlowEvent>(&e.payload)) {
        os << "blow id=" << b->id << " a'=" << mdisc::to_string(b->coefficient) << " over=" << (b->over_point ? 1 : 0);
    } else if (const auto* w = std::get_if<WalkEvent>(&e.payload)) {
        os << "walk i=" << w->i << " j=" << w->j << " coeffs=";
        for (std::size_t k = 0; k < w->coefficients.size(); ++k)
            os << (k ? "," : "") << mdisc::to_string(w->coefficients[k]);
    } else {
        const auto& q = std::get<QueryEvent>(e.payload);
        os << "query min" << (q.over_only ? " over" : "") << '='
           << (q.minimum ? mdisc::to_string(*q.minimum) : std::string("none"));
    }
    return os.str();
}

}  // namespace mdisc::blowup

#endif  // MDISC_BLOWUP_SCRIPT_HPP
