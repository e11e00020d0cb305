#ifndef MDISC_CLI_HPP
#define MDISC_CLI_HPP

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "blowup_script.hpp"
#include "cdv.hpp"
#include "certificate_io.hpp"
#include "errors.hpp"
#include "initial_form.hpp"
#include "parse.hpp"

namespace mdisc::cli {

enum class Command { bound, search, cdv, blowup, verify };
enum class Format { text, json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitNoBound = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitInconsistent = 3;

/// One invocation. Polynomial input comes from `file` (a `ring:` header line
/// followed by the expression) or from `ring` plus `expr`. Blow-up scripts
/// come from `file` or inline `script` with ';' separating lines.
struct JobSpec {
    Command command = Command::bound;
    std::optional<std::string> file;
    std::optional<std::string> ring;
    std::optional<std::string> expr;
    std::optional<std::string> script;
    std::optional<std::string> cert;
    std::optional<std::string> weights;
    std::optional<std::string> t_var;
    std::optional<std::int64_t> budget;
    Format format = Format::text;
    std::optional<std::string> out;
};

inline std::optional<Command> command_from(std::string_view s) {
    if (s == "bound") return Command::bound;
    if (s == "search") return Command::search;
    if (s == "cdv") return Command::cdv;
    if (s == "blowup") return Command::blowup;
    if (s == "verify") return Command::verify;
    return std::nullopt;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Splits an input file into its ring header and expression body. Blank lines
/// and lines starting with '#' are ignored.
inline Polynomial parse_input_file(std::string_view text) {
    std::optional<RingPtr> ring;
    std::string body;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') continue;
        line = line.substr(first);
        if (!ring) {
            if (line.substr(0, 5) != "ring:") throw ParseError("input file must start with a 'ring:' line", 0);
            ring = declare_ring(line.substr(5));
            continue;
        }
        body += std::string(line);
        body += ' ';
    }
    if (!ring) throw ParseError("input file has no 'ring:' line", 0);
    return parse(*ring, body);
}

inline Polynomial load_polynomial(const JobSpec& job) {
    if (job.file && (job.ring || job.expr)) throw PreconditionError("give either --file or --ring/--expr, not both");
    if (job.file) return parse_input_file(read_file(*job.file));
    if (!job.ring || !job.expr) throw PreconditionError("polynomial input needs --file or both --ring and --expr");
    return parse(declare_ring(*job.ring), *job.expr);
}

inline std::vector<std::int64_t> parse_weight_list(std::string_view s) {
    std::vector<std::int64_t> w;
    std::size_t start = 0;
    while (true) {
        const auto comma = s.find(',', start);
        std::string piece(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(piece, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (piece.empty() || used != piece.size()) throw ParseError("bad weight '" + piece + "'", start);
        w.push_back(v);
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return w;
}

inline WeightAssignment weights_for(const JobSpec& job, const Ring& ring) {
    if (!job.weights) throw PreconditionError("'bound' needs --weights");
    std::size_t t = ring.size() - 1;
    if (job.t_var) {
        auto idx = ring.index_of(*job.t_var);
        if (!idx) throw PreconditionError("--t names unknown variable '" + *job.t_var + "'");
        t = *idx;
    }
    WeightAssignment w{t, parse_weight_list(*job.weights)};
    w.validate(ring.size());
    return w;
}

namespace detail {

inline std::string dump(const io::Json& j) { return j.dump(2) + "\n"; }

inline std::string status_report(Format f, const std::string& key, const std::string& message) {
    if (f == Format::text) return message + "\n";
    io::Json j;
    j["schema"] = io::kSchemaVersion;
    j[key] = message;
    j["tool_version"] = io::kToolVersion;
    return dump(j);
}

inline std::string certificate_report(Format f, const io::Certificate& c) {
    return f == Format::json ? dump(io::to_json(c)) : io::to_text(c);
}

struct Outcome {
    int status;
    std::string report;
};

inline Outcome run_blowup(const JobSpec& job) {
    std::string text;
    if (job.file && job.script) throw PreconditionError("give either --file or --script, not both");
    if (job.file) {
        text = read_file(*job.file);
    } else if (job.script) {
        text = *job.script;
        for (char& c : text)
            if (c == ';') c = '\n';
    } else {
        throw PreconditionError("'blowup' needs --file or --script");
    }
    const auto result = blowup::run_script(text);
    if (job.format == Format::text) {
        std::string out;
        for (const auto& e : result.events) out += blowup::event_text(e) + "\n";
        return {kExitOk, out};
    }
    io::Json events = io::Json::array();
    for (const auto& e : result.events) {
        io::Json j;
        j["line"] = e.line;
        if (const auto* b = std::get_if<blowup::BlowEvent>(&e.payload)) {
            j["op"] = "blow";
            j["id"] = b->id;
            j["coefficient"] = mdisc::to_string(b->coefficient);
            j["over"] = b->over_point;
        } else if (const auto* w = std::get_if<blowup::WalkEvent>(&e.payload)) {
            j["op"] = "walk";
            j["i"] = w->i;
            j["j"] = w->j;
            io::Json cs = io::Json::array();
            for (const auto& a : w->coefficients) cs.push_back(mdisc::to_string(a));
            j["coefficients"] = std::move(cs);
        } else {
            const auto& q = std::get<blowup::QueryEvent>(e.payload);
            j["op"] = "query";
            j["over_only"] = q.over_only;
            j["min"] = q.minimum ? io::Json(mdisc::to_string(*q.minimum)) : io::Json(nullptr);
        }
        events.push_back(std::move(j));
    }
    io::Json j;
    j["schema"] = io::kSchemaVersion;
    j["kind"] = "blowup";
    j["events"] = std::move(events);
    j["tool_version"] = io::kToolVersion;
    return {kExitOk, dump(j)};
}

inline Outcome run_verify(const JobSpec& job) {
    if (!job.cert) throw PreconditionError("'verify' needs --cert");
    const auto c = io::certificate_from_string(read_file(*job.cert));
    const bool has_input = job.file || job.ring || job.expr;
    const Polynomial g = has_input ? load_polynomial(job) : c.input;
    const auto report = io::verify(g, c);
    if (job.format == Format::text) {
        std::string out = std::string("verified=") + (report.ok ? "1" : "0") + "\n";
        if (!report.ok) out += "mismatch=" + report.mismatch + "\n";
        return {report.ok ? kExitOk : kExitNoBound, out};
    }
    io::Json j;
    j["schema"] = io::kSchemaVersion;
    j["verified"] = report.ok;
    j["mismatch"] = report.ok ? io::Json(nullptr) : io::Json(report.mismatch);
    j["tool_version"] = io::kToolVersion;
    return {report.ok ? kExitOk : kExitNoBound, dump(j)};
}

inline Outcome dispatch(const JobSpec& job) {
    switch (job.command) {
        case Command::bound: {
            const Polynomial g = load_polynomial(job);
            const auto w = weights_for(job, g.ring());
            const auto b = theorem1_bound(g, w);
            if (!b) return {kExitNoBound, status_report(job.format, "result", "hypothesis fails")};
            return {kExitOk, certificate_report(job.format, io::from_bound(g, *b))};
        }
        case Command::search: {
            if (!job.budget) throw PreconditionError("'search' needs --budget");
            if (*job.budget < 1) throw PreconditionError("--budget must be positive");
            const Polynomial g = load_polynomial(job);
            const auto b = weight_search(g, *job.budget);
            if (!b) return {kExitNoBound, status_report(job.format, "result", "no bound found")};
            return {kExitOk, certificate_report(job.format, io::from_bound(g, *b))};
        }
        case Command::cdv: {
            const Polynomial g = load_polynomial(job);
            const auto c = cdv::certify(g);
            const auto check = cdv::verify_certificate(g, c);
            if (!check) throw InconsistencyError("emitted certificate failed verification: " + check.mismatch);
            return {kExitOk, certificate_report(job.format, io::from_cdv(c))};
        }
        case Command::blowup:
            return run_blowup(job);
        case Command::verify:
            return run_verify(job);
    }
    throw StructuralError("unknown command");
}

}  // namespace detail

/// Executes `job`, writing the report to `out` (or to job.out) and
/// diagnostics to `err`. Returns the process exit status.
inline int run(const JobSpec& job, std::ostream& out, std::ostream& err) {
    detail::Outcome o;
    try {
        o = detail::dispatch(job);
    } catch (const InconsistencyError& e) {
        err << "internal inconsistency: " << e.what() << '\n';
        return kExitInconsistent;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    if (job.out) {
        std::ofstream f(*job.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write '" << *job.out << "'\n";
            return kExitInputError;
        }
        f << o.report;
        if (!f.flush()) {
            err << "error: write to '" << *job.out << "' failed\n";
            return kExitInputError;
        }
    } else {
        out << o.report;
    }
    return o.status;
}

}  // namespace mdisc::cli

#endif  // MDISC_CLI_HPP
