#ifndef MDISC_CERTIFICATE_IO_HPP
#define MDISC_CERTIFICATE_IO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cdv.hpp"
#include "initial_form.hpp"
#include "parse.hpp"
#include "polynomial.hpp"

namespace mdisc::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

/// Either a plain weighted-bound certificate or a cDV certificate; `result`
/// is the final bound in both cases.
struct Certificate {
    Polynomial input;
    BoundCertificate result;
    std::optional<cdv::CdvCertificate> cdv;
};

namespace detail {

inline Json weights_json(const WeightAssignment& w) {
    Json a = Json::array();
    for (auto x : w.weights) a.push_back(x);
    return a;
}

inline Json stage_json(const cdv::StageRecord& s, const Ring& ring) {
    Json j;
    j["purpose"] = s.purpose;
    j["after_transforms"] = s.transforms_applied;
    j["weights"] = weights_json(s.weights);
    j["t_index"] = s.weights.t_index;
    j["t"] = ring.name(s.weights.t_index);
    j["A"] = s.order;
    j["phi"] = render(s.phi);
    j["exponent_one"] = s.exponent_one;
    return j;
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError(std::string("certificate field '") + key + "': " + e.what());
    }
}

inline WeightAssignment read_weights(const Json& j) {
    return WeightAssignment{get<std::size_t>(j, "t_index"), get<std::vector<std::int64_t>>(j, "weights")};
}

}  // namespace detail

inline Json to_json(const Certificate& c) {
    const Ring& ring = c.input.ring();
    Json j;
    j["schema"] = kSchemaVersion;
    j["kind"] = c.cdv ? "cdv" : "theorem1";
    j["ring"] = ring.names();
    j["input"] = render(c.input);
    j["weights"] = detail::weights_json(c.result.weights);
    j["t_index"] = c.result.weights.t_index;
    j["t"] = ring.name(c.result.weights.t_index);
    j["A"] = c.result.order;
    j["phi"] = render(c.result.phi);
    j["f1"] = render(c.result.exponent_one);
    j["d"] = c.result.bound;
    Json transforms = Json::array();
    if (c.cdv) {
        for (const auto& s : c.cdv->transforms) {
            Json t;
            t["kind"] = cdv::to_string(s.kind);
            t["variable"] = ring.name(s.variable);
            t["replacement"] = render(s.replacement);
            transforms.push_back(std::move(t));
        }
    }
    j["transforms"] = std::move(transforms);
    if (c.cdv) {
        j["du_val_type"] = c.cdv->type.name();
        Json stages = Json::array();
        for (const auto& s : c.cdv->stages) stages.push_back(detail::stage_json(s, ring));
        j["stages"] = std::move(stages);
        j["e8_a"] = c.cdv->e8_root ? Json(mdisc::to_string(*c.cdv->e8_root)) : Json(nullptr);
    }
    j["tool_version"] = kToolVersion;
    return j;
}

inline Certificate from_cdv(const cdv::CdvCertificate& c) { return Certificate{c.input, c.result, c}; }
inline Certificate from_bound(const Polynomial& input, const BoundCertificate& b) {
    return Certificate{input, b, std::nullopt};
}

inline Certificate certificate_from_json(const Json& j) {
    if (detail::get<int>(j, "schema") != kSchemaVersion) throw StructuralError("unsupported certificate schema");
    const std::string kind = detail::get<std::string>(j, "kind");
    if (kind != "theorem1" && kind != "cdv") throw StructuralError("unknown certificate kind '" + kind + "'");
    const RingPtr ring = declare_ring(detail::get<std::vector<std::string>>(j, "ring"));
    if (ring->size() < 2) throw StructuralError("certificate ring needs at least two variables");
    const RingPtr u_ring = initial_form_ring(ring->size());
    const Polynomial input = parse(ring, detail::get<std::string>(j, "input"));

    BoundCertificate result{detail::read_weights(j), detail::get<std::int64_t>(j, "A"),
                            parse(u_ring, detail::get<std::string>(j, "phi")),
                            parse(u_ring, detail::get<std::string>(j, "f1")), detail::get<std::int64_t>(j, "d")};
    result.weights.validate(ring->size());
    if (kind == "theorem1") return Certificate{input, std::move(result), std::nullopt};

    cdv::CdvCertificate c{input, cdv::DuValType::from_name(detail::get<std::string>(j, "du_val_type")), {}, {},
                          std::nullopt, result};
    for (const Json& t : j.at("transforms")) {
        const auto v = ring->index_of(detail::get<std::string>(t, "variable"));
        if (!v) throw StructuralError("transform names an unknown variable");
        c.transforms.push_back(cdv::TransformStep{cdv::transform_kind_from(detail::get<std::string>(t, "kind")), *v,
                                                  parse(ring, detail::get<std::string>(t, "replacement"))});
    }
    for (const Json& s : j.at("stages")) {
        cdv::StageRecord st{detail::get<std::string>(s, "purpose"), detail::get<std::size_t>(s, "after_transforms"),
                            detail::read_weights(s), detail::get<std::int64_t>(s, "A"),
                            parse(u_ring, detail::get<std::string>(s, "phi")), detail::get<bool>(s, "exponent_one")};
        st.weights.validate(ring->size());
        c.stages.push_back(std::move(st));
    }
    if (j.contains("e8_a") && !j.at("e8_a").is_null()) c.e8_root = parse_rational(detail::get<std::string>(j, "e8_a"));
    return Certificate{input, std::move(result), std::move(c)};
}

inline Certificate certificate_from_string(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte > 0 ? e.byte - 1 : 0);
    }
    return certificate_from_json(j);
}

/// Re-derives every stored field from `g`.
inline cdv::VerifyReport verify(const Polynomial& g, const Certificate& c) {
    if (c.cdv) return cdv::verify_certificate(g, *c.cdv);
    auto bad = [](std::string why) { return cdv::VerifyReport{false, std::move(why)}; };
    try {
        if (c.input != g) return bad("certificate input differs from the supplied polynomial");
        const auto replay = theorem1_bound(g, c.result.weights);
        if (!replay) return bad("weights do not satisfy the exponent-one hypothesis");
        if (replay->order != c.result.order) return bad("A differs");
        if (replay->phi != c.result.phi) return bad("phi differs");
        if (replay->exponent_one != c.result.exponent_one) return bad("f1 differs");
        if (replay->bound != c.result.bound) return bad("d differs");
    } catch (const Error& e) {
        return bad(std::string("replay raised: ") + e.what());
    }
    return {};
}

inline std::string join_weights(const WeightAssignment& w) {
    std::string s;
    for (std::size_t i = 0; i < w.weights.size(); ++i) s += (i ? "," : "") + std::to_string(w.weights[i]);
    return s;
}

/// key=value lines mirroring the JSON fields.
inline std::string to_text(const Certificate& c) {
    const Ring& ring = c.input.ring();
    std::ostringstream os;
    os << "kind=" << (c.cdv ? "cdv" : "theorem1") << '\n';
    os << "ring=";
    for (std::size_t i = 0; i < ring.size(); ++i) os << (i ? "," : "") << ring.name(i);
    os << '\n';
    os << "input=" << render(c.input) << '\n';
    if (c.cdv) os << "du_val_type=" << c.cdv->type.name() << '\n';
    if (c.cdv) {
        for (const auto& s : c.cdv->stages)
            os << "stage=" << s.purpose << " t=" << ring.name(s.weights.t_index)
               << " weights=" << join_weights(s.weights) << " A=" << s.order << " phi=" << render(s.phi)
               << " exponent_one=" << (s.exponent_one ? 1 : 0) << '\n';
        for (const auto& s : c.cdv->transforms)
            os << "transform=" << cdv::to_string(s.kind) << ' ' << ring.name(s.variable) << " -> "
               << render(s.replacement) << '\n';
        if (c.cdv->e8_root) os << "e8_a=" << mdisc::to_string(*c.cdv->e8_root) << '\n';
    }
    os << "t=" << ring.name(c.result.weights.t_index) << '\n';
    os << "weights=" << join_weights(c.result.weights) << '\n';
    os << "A=" << c.result.order << '\n';
    os << "phi=" << render(c.result.phi) << '\n';
    os << "f1=" << render(c.result.exponent_one) << '\n';
    os << "d=" << c.result.bound << '\n';
    return os.str();
}

}  // namespace mdisc::io

#endif  // MDISC_CERTIFICATE_IO_HPP
