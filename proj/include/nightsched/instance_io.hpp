// SPDX-License-Identifier: Apache-2.0
//
// JSON problem-instance format, UTC timestamp conversion and the synthetic
// equatorial scenario generator.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nightsched/model.hpp"

namespace nightsched {

/// Malformed JSON or timestamp text; the message carries line and column.
class ParseError : public InstanceError {
  public:
    using InstanceError::InstanceError;
};

/// Parses "YYYY-MM-DDTHH:MM:SS[.fff][Z]" as UTC.
Instant parse_utc(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SS[.fff]Z".
std::string format_utc(Instant t);

ProblemInstance instance_from_json(const nlohmann::json& doc);
nlohmann::json instance_to_json(const ProblemInstance& instance);

ProblemInstance parse_instance(std::string_view text);
ProblemInstance load_instance(const std::string& path);

std::string read_file(const std::string& path);

/// FNV-1a 64-bit digest, hex encoded.
std::string digest(std::string_view bytes);

struct ScenarioOptions {
    int count{24};
    Degrees latitude{36.0};
    double night_hours{12.0};
    std::uint64_t seed{1};
    Seconds sequence_total{600.0};
    Seconds sequence_open{540.0};
    int max_loops{4};
};

/// Targets evenly spaced in right ascension on the celestial equator, one
/// anytime ticket each, a single account, and a night centred on local
/// midnight. The seed picks the calendar date.
ProblemInstance gen_scenario_equatorial(const ScenarioOptions& options);

}  // namespace nightsched
