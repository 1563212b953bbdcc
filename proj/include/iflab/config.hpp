#pragma once

// JSON system configurations: parsing with located errors, emission, and a
// digest that ignores key order.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iflab/gdifs.hpp"
#include "iflab/pwl.hpp"
#include "iflab/rational.hpp"

namespace iflab {

// A JSON number, or a string "p/q" / decimal that also keeps its exact text.
struct Number {
    double value = 0.0;
    std::optional<std::string> exact;

    friend bool operator==(const Number&, const Number&) = default;
};

struct MapConfig {
    std::vector<Number> breakpoints;
    std::vector<Number> slopes;
    Number tau;

    friend bool operator==(const MapConfig&, const MapConfig&) = default;
};

struct EdgeConfig {
    int from = 1;  // 1-based, as written
    int to = 1;
    Number r;
    Number t;

    friend bool operator==(const EdgeConfig&, const EdgeConfig&) = default;
};

struct Settings {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> budget;
    std::optional<int> depth;
    std::optional<int> max_order;
    std::optional<int> probe_depth;
    std::optional<double> tol;

    friend bool operator==(const Settings&, const Settings&) = default;
};

enum class SystemKind { Cplifs, Gdifs };

struct SystemConfig {
    SystemKind kind = SystemKind::Cplifs;
    std::vector<MapConfig> maps;    // cplifs
    int vertex_count = 0;           // gdifs
    std::vector<EdgeConfig> edges;  // gdifs
    Settings settings;

    friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

// Throws Error{Parse} ("line L, column C: ...") for malformed JSON and
// Error{Validation} ("$.maps[0].slopes: ...") for documents that do not
// describe a valid system.
SystemConfig parse_config(std::string_view text);
SystemConfig load_config(const std::string& path);

std::string emit_config(const SystemConfig& cfg);

// FNV-1a 64 of the canonical emission, as 16 hex digits.
std::string config_digest(const SystemConfig& cfg);

Cplifs to_cplifs(const SystemConfig& cfg);
// Present only when every number was given exactly (integer or string).
std::optional<ExactSystem> to_exact(const SystemConfig& cfg);
Gdifs to_gdifs(const SystemConfig& cfg);

}  // namespace iflab
