#include "qcopies/serialize.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include "qcopies/errors.hpp"

namespace qcopies {
namespace {

// nlohmann throws its own exception types; re-raise as ours.
template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json to_json(const DensityMatrix& rho) {
  Json re = Json::array(), im = Json::array();
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    Json r = Json::array(), m = Json::array();
    for (std::size_t j = 0; j < rho.dim(); ++j) {
      r.push_back(rho(i, j).real());
      m.push_back(rho(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(m));
  }
  return {{"n", rho.qubits()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DensityMatrix density_from_json(const Json& j) {
  return guarded("density matrix", [&] {
    const int n = j.at("n").get<int>();
    check_qubit_count(n);
    const std::size_t d = std::size_t{1} << n;
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (re.size() != d || im.size() != d) throw SizeError("density matrix JSON has the wrong number of rows");
    ComplexMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      if (re[r].size() != d || im[r].size() != d) throw SizeError("density matrix JSON row has the wrong length");
      for (std::size_t c = 0; c < d; ++c) m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
    }
    return DensityMatrix::from_matrix(std::move(m));
  });
}

Json to_json(const SettingProbabilities& p) { return {{"n", p.n}, {"P", p.P}}; }

SettingProbabilities probabilities_from_json(const Json& j) {
  return guarded("setting probabilities", [&] {
    SettingProbabilities p{j.at("n").get<int>(), j.at("P").get<std::vector<double>>()};
    p.validate();
    return p;
  });
}

Json to_json(const BudgetProblem& p) { return {{"k", p.k}, {"epsilon", p.epsilon}}; }

BudgetProblem budget_from_json(const Json& j) {
  return guarded("budget problem", [&] {
    BudgetProblem p{j.at("k").get<std::vector<double>>(), j.at("epsilon").get<double>()};
    p.validate();
    return p;
  });
}

Json to_json(const CopyAllocation& a) {
  return {{"t", a.t}, {"real_t", a.real_t}, {"epsilon0", a.epsilon0}, {"total", a.total()}};
}

CopyAllocation allocation_from_json(const Json& j) {
  return guarded("copy allocation", [&] {
    auto a = CopyAllocation::from_counts(j.at("t").get<std::vector<std::int64_t>>());
    if (j.contains("real_t")) a.real_t = j.at("real_t").get<std::vector<double>>();
    if (a.real_t.size() != a.t.size()) throw SizeError("real_t and t lengths differ");
    a.epsilon0 = j.value("epsilon0", 0.0);
    return a;
  });
}

std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string csv_number(std::int64_t x) { return std::to_string(x); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

CsvTable& CsvTable::row(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) throw SizeError("CSV row has the wrong number of cells");
  rows_.push_back(std::move(cells));
  return *this;
}

void CsvTable::write(std::ostream& os) const {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
}

std::string CsvTable::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace qcopies
