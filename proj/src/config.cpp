#include "iflab/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace iflab {

using nlohmann::json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& msg) {
    throw Error(ErrorKind::Validation, path + ": " + msg);
}

Number read_number(const json& j, const std::string& path) {
    Number n;
    if (j.is_number_integer()) {
        n.value = j.get<double>();
        n.exact = to_string(Rational(j.get<long long>()));
    } else if (j.is_number()) {
        n.value = j.get<double>();
    } else if (j.is_string()) {
        const auto q = parse_rational(j.get<std::string>());
        if (!q) invalid(path, "'" + j.get<std::string>() + "' is not a number or p/q");
        n.value = to_double(*q);
        n.exact = to_string(*q);
    } else {
        invalid(path, "expected a number");
    }
    if (!std::isfinite(n.value)) invalid(path, "number is not finite");
    return n;
}

std::vector<Number> read_numbers(const json& j, const std::string& path) {
    if (!j.is_array()) invalid(path, "expected an array");
    std::vector<Number> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

const json& require(const json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) invalid(path, std::string("missing field '") + key + "'");
    return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known = known || it.key() == k;
        if (!known) invalid(path, "unknown field '" + it.key() + "'");
    }
}

template <class T>
std::optional<T> read_setting(const json& s, const char* key, const std::string& path) {
    auto it = s.find(key);
    if (it == s.end()) return std::nullopt;
    const std::string p = path + "." + key;
    if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) invalid(p, "expected a number");
        return it->get<double>();
    } else {
        if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
            invalid(p, "expected a non-negative integer");
        const auto v = it->get<unsigned long long>();
        if (v > static_cast<unsigned long long>(std::numeric_limits<T>::max())) invalid(p, "value out of range");
        return static_cast<T>(v);
    }
}

Settings read_settings(const json& s, const std::string& path) {
    if (!s.is_object()) invalid(path, "expected an object");
    only_keys(s, {"seed", "budget", "depth", "maxOrder", "probeDepth", "tol"}, path);
    Settings out;
    out.seed = read_setting<std::uint64_t>(s, "seed", path);
    out.budget = read_setting<std::size_t>(s, "budget", path);
    out.depth = read_setting<int>(s, "depth", path);
    out.max_order = read_setting<int>(s, "maxOrder", path);
    out.probe_depth = read_setting<int>(s, "probeDepth", path);
    out.tol = read_setting<double>(s, "tol", path);
    return out;
}

std::string location(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json number_json(const Number& n) { return n.exact ? json(*n.exact) : json(n.value); }

json numbers_json(const std::vector<Number>& v) {
    json a = json::array();
    for (const auto& n : v) a.push_back(number_json(n));
    return a;
}

}  // namespace

SystemConfig parse_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string what = e.what();
        const auto pos = what.find("parse error");
        throw Error(ErrorKind::Parse, location(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                                          (pos == std::string::npos ? what : what.substr(pos)));
    }
    if (!doc.is_object()) invalid("$", "expected an object");
    SystemConfig cfg;
    const json& kind = require(doc, "kind", "$");
    if (kind == "cplifs") {
        cfg.kind = SystemKind::Cplifs;
        only_keys(doc, {"kind", "maps", "settings"}, "$");
        const json& maps = require(doc, "maps", "$");
        if (!maps.is_array() || maps.empty()) invalid("$.maps", "expected a non-empty array");
        for (std::size_t k = 0; k < maps.size(); ++k) {
            const std::string p = "$.maps[" + std::to_string(k) + "]";
            const json& m = maps[k];
            if (!m.is_object()) invalid(p, "expected an object");
            only_keys(m, {"breakpoints", "slopes", "tau"}, p);
            MapConfig mc;
            if (m.contains("breakpoints")) mc.breakpoints = read_numbers(m["breakpoints"], p + ".breakpoints");
            mc.slopes = read_numbers(require(m, "slopes", p), p + ".slopes");
            mc.tau = read_number(require(m, "tau", p), p + ".tau");
            cfg.maps.push_back(std::move(mc));
        }
    } else if (kind == "gdifs") {
        cfg.kind = SystemKind::Gdifs;
        only_keys(doc, {"kind", "vertexCount", "edges", "settings"}, "$");
        const json& vc = require(doc, "vertexCount", "$");
        if (!vc.is_number_integer() || vc.get<long long>() < 1) invalid("$.vertexCount", "expected a positive integer");
        cfg.vertex_count = vc.get<int>();
        const json& edges = require(doc, "edges", "$");
        if (!edges.is_array()) invalid("$.edges", "expected an array");
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const std::string p = "$.edges[" + std::to_string(i) + "]";
            const json& e = edges[i];
            if (!e.is_object()) invalid(p, "expected an object");
            only_keys(e, {"from", "to", "r", "t"}, p);
            EdgeConfig ec;
            for (auto [key, dst] : {std::pair{"from", &ec.from}, std::pair{"to", &ec.to}}) {
                const json& v = require(e, key, p);
                if (!v.is_number_integer()) invalid(p + "." + key, "expected an integer vertex");
                *dst = v.get<int>();
            }
            ec.r = read_number(require(e, "r", p), p + ".r");
            ec.t = e.contains("t") ? read_number(e["t"], p + ".t") : Number{0.0, "0"};
            cfg.edges.push_back(std::move(ec));
        }
    } else {
        invalid("$.kind", "expected \"cplifs\" or \"gdifs\"");
    }
    if (doc.contains("settings")) cfg.settings = read_settings(doc["settings"], "$.settings");

    // Semantic validation: the document must describe a valid system.
    if (cfg.kind == SystemKind::Cplifs) {
        for (std::size_t k = 0; k < cfg.maps.size(); ++k) {
            try {
                std::vector<double> b, s;
                for (const auto& n : cfg.maps[k].breakpoints) b.push_back(n.value);
                for (const auto& n : cfg.maps[k].slopes) s.push_back(n.value);
                PiecewiseLinearMap(b, s, cfg.maps[k].tau.value);
            } catch (const Error& e) {
                invalid("$.maps[" + std::to_string(k) + "]", e.what());
            }
        }
    } else {
        try {
            validate_gdifs(to_gdifs(cfg));
        } catch (const Error& e) {
            invalid("$.edges", e.what());
        }
    }
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string emit_config(const SystemConfig& cfg) {
    json doc;
    if (cfg.kind == SystemKind::Cplifs) {
        doc["kind"] = "cplifs";
        doc["maps"] = json::array();
        for (const auto& m : cfg.maps)
            doc["maps"].push_back(
                {{"breakpoints", numbers_json(m.breakpoints)}, {"slopes", numbers_json(m.slopes)}, {"tau", number_json(m.tau)}});
    } else {
        doc["kind"] = "gdifs";
        doc["vertexCount"] = cfg.vertex_count;
        doc["edges"] = json::array();
        for (const auto& e : cfg.edges)
            doc["edges"].push_back({{"from", e.from}, {"to", e.to}, {"r", number_json(e.r)}, {"t", number_json(e.t)}});
    }
    json s = json::object();
    const Settings& st = cfg.settings;
    if (st.seed) s["seed"] = *st.seed;
    if (st.budget) s["budget"] = *st.budget;
    if (st.depth) s["depth"] = *st.depth;
    if (st.max_order) s["maxOrder"] = *st.max_order;
    if (st.probe_depth) s["probeDepth"] = *st.probe_depth;
    if (st.tol) s["tol"] = *st.tol;
    if (!s.empty()) doc["settings"] = s;
    return doc.dump(2) + "\n";
}

std::string config_digest(const SystemConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : emit_config(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Cplifs to_cplifs(const SystemConfig& cfg) {
    if (cfg.kind != SystemKind::Cplifs) throw Error(ErrorKind::Validation, "configuration is not a cplifs");
    std::vector<PiecewiseLinearMap> maps;
    for (const auto& m : cfg.maps) {
        std::vector<double> b, s;
        for (const auto& n : m.breakpoints) b.push_back(n.value);
        for (const auto& n : m.slopes) s.push_back(n.value);
        maps.emplace_back(std::move(b), std::move(s), m.tau.value);
    }
    return Cplifs(std::move(maps));
}

std::optional<ExactSystem> to_exact(const SystemConfig& cfg) {
    if (cfg.kind != SystemKind::Cplifs) return std::nullopt;
    auto conv = [](const Number& n) -> std::optional<Rational> {
        if (!n.exact) return std::nullopt;
        return parse_rational(*n.exact);
    };
    ExactSystem out;
    for (const auto& m : cfg.maps) {
        ExactMap em;
        for (const auto& n : m.breakpoints) {
            auto q = conv(n);
            if (!q) return std::nullopt;
            em.breakpoints.push_back(*q);
        }
        for (const auto& n : m.slopes) {
            auto q = conv(n);
            if (!q) return std::nullopt;
            em.slopes.push_back(*q);
        }
        auto t = conv(m.tau);
        if (!t) return std::nullopt;
        em.tau = *t;
        out.push_back(std::move(em));
    }
    return out;
}

Gdifs to_gdifs(const SystemConfig& cfg) {
    if (cfg.kind != SystemKind::Gdifs) throw Error(ErrorKind::Validation, "configuration is not a gdifs");
    Gdifs g;
    g.vertex_count = cfg.vertex_count;
    for (const auto& e : cfg.edges) g.edges.push_back({e.from - 1, e.to - 1, {e.r.value, e.t.value}});
    return g;
}

}  // namespace iflab
