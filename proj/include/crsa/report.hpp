#pragma once

#include "crsa/criteria.hpp"
#include "crsa/crs.hpp"

#include <json.hpp>

#include <string>

namespace crsa {

/// Stable JSON report. The fields `verdict`, `criterion`, `hypotheses`,
/// `peaks` and `witness` are always present; `criterion` and `witness`
/// are null when absent. Extra fields (normality, survey, exit_code, the
/// echoed assumptions) are additive.
nlohmann::json report_json(const System &sys, const PipelineResult &res,
                           const Assumptions &assumptions,
                           std::size_t inst_size_bound = 3);

/// Human-readable report with one finding per line.
std::string report_text(const System &sys, const PipelineResult &res,
                        const Assumptions &assumptions,
                        std::size_t inst_size_bound = 3);

} // namespace crsa
