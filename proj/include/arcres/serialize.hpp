#pragma once

#include <json.hpp>
#include <vector>

#include "arcres/errors.hpp"
#include "arcres/pipeline.hpp"
#include "arcres/resolve.hpp"

namespace arcres {

using json = nlohmann::json;

json to_json(const ValidationReport& report);
json to_json(const DesignParams& params);
json to_json(const ReportRow& row, bool with_timings = true);
ReportRow report_row_from_json(const json& j);

/// Index-based: classes are block-index lists, resolutions class-index
/// lists, compatible sets resolution-index lists, each wrapped with a count.
json classes_to_json(const std::vector<ParallelClass>& classes);
json resolutions_to_json(const std::vector<Resolution>& res);
json compatible_sets_to_json(const std::vector<CompatibleSet>& sets);

/// Parsing re-derives bit vectors from the design; indices are range-checked.
std::vector<ParallelClass> classes_from_json(const json& j, const Design& design);
std::vector<Resolution> resolutions_from_json(const json& j, std::size_t num_classes);
std::vector<CompatibleSet> compatible_sets_from_json(const json& j, std::size_t num_resolutions);

}  // namespace arcres
