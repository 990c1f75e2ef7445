#pragma once

#include <string>
#include <vector>

namespace edyn {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    /// Measured quantities, formatted deterministically.
    std::string detail;
    double seconds = 0.0;
    double time_limit = 0.0;
};

struct AcceptanceOptions {
    /// 0 selects the hardware concurrency.
    unsigned workers = 0;
    /// Criterion ids to run; empty runs all twelve.
    std::vector<int> only;
};

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// `id,name,status,detail` rows; timings are left out so reruns are byte-identical.
std::string acceptance_summary_csv(const std::vector<CriterionResult>& results);

} // namespace edyn
