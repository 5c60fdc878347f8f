#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "certificates.hpp"
#include "orlicz.hpp"
#include "potential.hpp"
#include "sequence.hpp"

namespace freeinterp {

using Json = nlohmann::json;

Json to_json(const Sequence& seq);
Json to_json(const Measure& mu);
Json to_json(const Certificate& cert);
Json to_json(const ClassificationReport& rep);
Json to_json(const WeakL1Stats& stats);
Json to_json(const OrliczExample& ex);
Json to_json(const GrowthReport& rep);
Json to_json(const NoOuterBound& bound);

/// Throws Error(Parse) on malformed input; geometric validation errors
/// (DuplicatePoint, InvalidArgument, ...) propagate unchanged.
Sequence sequence_from_json(const Json& j);
Sequence parse_sequence(std::string_view text);
Measure measure_from_json(const Json& j);
Measure parse_measure(std::string_view text);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

/// Header "theta,M", one row per grid angle, %.17g.
std::string profile_csv(const MaximalProfile& profile);

}  // namespace freeinterp
