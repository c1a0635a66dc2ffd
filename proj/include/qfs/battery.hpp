/**
 * @file battery.hpp
 * @brief The eight acceptance checks, shared by the acceptance test and
 *        `qfs reproduce-paper`.
 */
#pragma once

#include <string>
#include <vector>

namespace qfs {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

CriterionResult check_delpezzo_arithmetic();
CriterionResult check_table();
CriterionResult check_verdicts();
CriterionResult check_search();
CriterionResult check_cusp_figures();
CriterionResult check_toric();
CriterionResult check_witt();
CriterionResult check_acc();

std::vector<CriterionResult> run_battery();

}  // namespace qfs
