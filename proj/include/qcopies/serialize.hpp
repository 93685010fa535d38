#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcopies/allocator.hpp"
#include "qcopies/core.hpp"
#include "qcopies/witness.hpp"

namespace qcopies {

using Json = nlohmann::json;

// {"n": int, "re": [[...]], "im": [[...]]}
Json to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const Json& j);

// {"n": int, "P": [...]}
Json to_json(const SettingProbabilities& p);
SettingProbabilities probabilities_from_json(const Json& j);

// {"k": [...], "epsilon": x}
Json to_json(const BudgetProblem& p);
BudgetProblem budget_from_json(const Json& j);

// {"t": [...], "real_t": [...], "epsilon0": x, "total": int}
Json to_json(const CopyAllocation& a);
CopyAllocation allocation_from_json(const Json& j);

// Formats with 6 significant digits, the CSV convention.
std::string csv_number(double x);
std::string csv_number(std::int64_t x);

// Minimal CSV writer: a header row, then rows of preformatted cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  CsvTable& row(std::vector<std::string> cells);
  std::size_t size() const { return rows_.size(); }
  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace qcopies
