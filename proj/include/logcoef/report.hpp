#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "logcoef/bounds.hpp"
#include "logcoef/classes.hpp"
#include "logcoef/functional.hpp"
#include "logcoef/search.hpp"

namespace logcoef {

// Shortest round-trip decimal; parses back to the same double.
std::string format_real(double x);

nlohmann::json to_json(const ClassSpec& spec);
nlohmann::json to_json(const FunctionSpec& spec);
nlohmann::json to_json(const BoundPair& b);
nlohmann::json to_json(const MembershipReport& r);
nlohmann::json to_json(const SearchResult& r);
nlohmann::json to_json(const ScanResult& r);
nlohmann::json to_json(const AnalyticFunction& f, const LogPair& p);

/// Comma-separated table with a header row and LF line endings. Cells are
/// written verbatim; numeric cells come from format_real.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void write(std::ostream& os) const;
  static CsvTable parse(const std::string& text);
};

// class, param, lower, upper, lower_sharp, upper_sharp
CsvTable bounds_table(const std::vector<ClassSpec>& specs);

}  // namespace logcoef
