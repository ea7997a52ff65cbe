#pragma once

#include "pseudocyl/conformal_cylinder.hpp"
#include "pseudocyl/report_io.hpp"

#include <functional>
#include <string>
#include <vector>

namespace pseudocyl::acceptance {

struct Options {
  /// R_00 expression used in the closed-form/oracle comparison. Switching it
  /// to the alternative display is the mutation check for criterion 6.
  conformal::RicciFormula ricci_formula = conformal::RicciFormula::kTransformationLaw;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  io::Json measurements;
};

struct Criterion {
  int id;
  std::string name;
  std::function<CriterionResult(const Options&)> run;
};

/// Criteria 1 to 11 in order. Criterion 11 reruns 1 to 10 twice.
const std::vector<Criterion>& criteria();

CriterionResult run_criterion(int id, const Options& options = {});

/// Results of criteria 1 to 10 only.
std::vector<CriterionResult> run_core(const Options& options = {});

std::vector<CriterionResult> run_all(
    const Options& options = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

io::Json to_json(const CriterionResult& r);
io::Json to_json(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

/// One line, e.g. "PASS  6 oracle agreement".
std::string summary_line(const CriterionResult& r);

}  // namespace pseudocyl::acceptance
