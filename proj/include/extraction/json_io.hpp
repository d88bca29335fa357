#pragma once

#include <json.hpp>

#include "extraction/sensitivity.hpp"
#include "extraction/sim.hpp"
#include "extraction/solver.hpp"
#include "extraction/verify.hpp"

namespace extraction {

using nlohmann::json;

json params_to_json(const ModelParams& p);
// Throws ValidationError("BadInput") on missing/ill-typed keys; the result is
// validated before being returned.
ModelParams params_from_json(const json& j);

json solution_to_json(const BarrierSolution& s);
// Rebuilds a solution verbatim from its serialized form (no recomputation), so
// solve -> value round trips are lossless.
BarrierSolution solution_from_json(const json& j);

json estimate_to_json(const SimEstimate& e);
json stop_estimate_to_json(const StopEstimate& e);
json hjb_report_to_json(const HjbReport& r);
json sweep_report_to_json(const SweepReport& r);
json root_sweep_report_to_json(const RootSweepReport& r);

}  // namespace extraction
