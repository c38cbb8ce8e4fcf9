#pragma once
#include "lwa/metrics.hpp"
#include "lwa/scenario.hpp"

namespace lwa::sim {

/// Runs the eNB -> dual link -> UE pipeline at 1 ms granularity.
/// Deterministic: (scenario, seed) fully determines the report.
metrics::Report run(const scenario::Scenario& s);

}  // namespace lwa::sim
