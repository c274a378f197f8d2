#pragma once

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "masr/cost/baseline.hpp"
#include "masr/cost/cost_model.hpp"
#include "masr/dse/experiments.hpp"
#include "masr/dse/pareto.hpp"
#include "masr/dse/sweep.hpp"
#include "masr/dse/table.hpp"

namespace masr::dse {

/// One row per run with every stat and cost field; failed runs keep their error.
[[nodiscard]] Table runs_table(std::span<const RunRecord> rows);
/// Sweep points with front membership for both objective pairs.
[[nodiscard]] Table pareto_table(const SweepResult& r);
/// {design, category, area, energy}, long format.
[[nodiscard]] Table cost_breakdown_table(std::span<const cost::DesignCost> designs, const std::string& name = "fig8");
/// {banks, category, fraction}.
[[nodiscard]] Table bank_table(std::span<const BreakdownPoint> points, const std::string& name = "fig9-left");
/// {queue_depth, category, fraction}.
[[nodiscard]] Table queue_table(std::span<const BreakdownPoint> points, const std::string& name = "fig9-center");
/// {design, lanes, balance, utilization, cycles}.
[[nodiscard]] Table utilization_table(std::span<const BreakdownPoint> points, const std::string& name = "fig9-right");
[[nodiscard]] Table scaling_table(std::span<const ScalingPoint> points, const std::string& name = "fig10");
[[nodiscard]] Table comparison_table(std::span<const cost::ComparisonRow> rows, const std::string& name = "fig11");
[[nodiscard]] Table encoding_table(std::span<const EncodingPoint> points, const std::string& name = "encoding");
[[nodiscard]] Table predication_table(std::span<const PredicationPoint> points, const std::string& name = "predication");
[[nodiscard]] Table double_buffer_table(std::span<const DoubleBufferPoint> points,
                                        const std::string& name = "double-buffer");

/// Structured report of a single run. Contains nothing that varies between identical runs.
[[nodiscard]] nlohmann::ordered_json run_report(const Workload& w, const RunRecord& r, const cost::UnitCosts& units);

}  // namespace masr::dse
