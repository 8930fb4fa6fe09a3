#pragma once

#include <functional>
#include <string>
#include <vector>

#include "densitymod/report.hpp"

namespace densitymod {

struct SelftestOptions {
    unsigned seed = 1;
    bool quick = false;      // reduced grid and sample counts
    int D = 8;               // degree cap for the exact checks
    int points = 200;        // theta points per check
    double tolerance = 1e-9; // residual tolerance for the theta checks
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string summary;
    json details;
    // wall-clock data; kept out of the JSON so reruns are byte-identical
    double seconds = 0;
    double budget_seconds = 0;  // limit on seconds, or on max_case_seconds when that is set
    double max_case_seconds = 0;
    bool within_budget() const;
};

CriterionResult criterion_theorem1(const SelftestOptions& o);
CriterionResult criterion_coboundary(const SelftestOptions& o);
CriterionResult criterion_classification(const SelftestOptions& o);
CriterionResult criterion_unitarity(const SelftestOptions& o);
CriterionResult criterion_structure(const SelftestOptions& o);
CriterionResult criterion_group(const SelftestOptions& o);
CriterionResult criterion_discrepancies(const SelftestOptions& o);

// All seven in order; on_done, if given, sees each result as it finishes.
std::vector<CriterionResult> run_selftest(const SelftestOptions& o,
                                          const std::function<void(const CriterionResult&)>& on_done = {});
json selftest_json(const SelftestOptions& o, const std::vector<CriterionResult>& results);

// Grids used by the classification checks.
struct GridPoint {
    int n;
    GaussianRational lambda;
};
std::vector<GridPoint> classification_grid();

}  // namespace densitymod
