#include "logcoef/report.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

namespace logcoef {

namespace {

nlohmann::json complex_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json body_json(const BodyPoint& p) {
  return {{"modulus", p.modulus}, {"radial", p.radial}, {"phase", p.phase}};
}

}  // namespace

// Shortest decimal that parses back to the same double.
std::string format_real(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

nlohmann::json to_json(const ClassSpec& spec) {
  nlohmann::json j{{"class", spec.letter()}};
  if (spec.kind() == ClassKind::kU) j["lambda"] = spec.lambda();
  if (spec.kind() == ClassKind::kM || spec.kind() == ClassKind::kG) j["alpha"] = spec.alpha();
  return j;
}

nlohmann::json to_json(const FunctionSpec& spec) {
  nlohmann::json j{{"label", spec.label}, {"theta", spec.theta}};
  if (spec.lambda) j["lambda"] = *spec.lambda;
  if (spec.alpha) j["alpha"] = *spec.alpha;
  return j;
}

nlohmann::json to_json(const BoundPair& b) {
  nlohmann::json j{{"lower", b.lower},
                   {"upper", b.upper},
                   {"lower_sharp", b.lower_sharp},
                   {"upper_sharp", b.upper_sharp},
                   {"note", b.note}};
  j["lower_witness"] = b.lower_witness ? to_json(*b.lower_witness) : nlohmann::json(nullptr);
  j["upper_witness"] = b.upper_witness ? to_json(*b.upper_witness) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const MembershipReport& r) {
  nlohmann::json singular = nlohmann::json::array();
  for (cplx z : r.singular) singular.push_back(complex_json(z));
  return {{"spec", to_json(r.spec)},
          {"radii", r.radii},
          {"angular", r.angular},
          {"radius_worst", r.radius_worst},
          {"worst_margin", r.worst_margin},
          {"witness", complex_json(r.witness)},
          {"singular", singular},
          {"pass", r.pass}};
}

nlohmann::json to_json(const SearchResult& r) {
  return {{"spec", to_json(r.spec)},
          {"min_delta", r.min_delta},
          {"max_delta", r.max_delta},
          {"argmin", body_json(r.argmin)},
          {"argmax", body_json(r.argmax)},
          {"resolution", r.resolution},
          {"phase_count", r.phase_count},
          {"refined", r.refined},
          {"body", "proof relaxation"}};
}

nlohmann::json to_json(const ScanResult& r) {
  return {{"spec", to_json(r.spec)},         {"samples", r.samples},
          {"seed", r.seed},                  {"violations", r.violations},
          {"min_delta", r.min_delta},        {"max_delta", r.max_delta},
          {"bound_lower", r.bound_lower},    {"bound_upper", r.bound_upper},
          {"tolerance", kViolationTolerance}};
}

nlohmann::json to_json(const AnalyticFunction& f, const LogPair& p) {
  nlohmann::json params = nlohmann::json::object();
  for (const auto& q : f.params) params[q.name] = q.value;
  return {{"function", f.label},
          {"params", params},
          {"order", f.series.order()},
          {"a2", complex_json(f.series.a(2))},
          {"a3", complex_json(f.series.a(3))},
          {"gamma1", complex_json(p.gamma1)},
          {"gamma2", complex_json(p.gamma2)},
          {"delta", p.delta}};
}

void CsvTable::write(std::ostream& os) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

CsvTable CsvTable::parse(const std::string& text) {
  CsvTable t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

CsvTable bounds_table(const std::vector<ClassSpec>& specs) {
  CsvTable t{{"class", "param", "lower", "upper", "lower_sharp", "upper_sharp"}, {}};
  for (const auto& s : specs) {
    const BoundPair b = bound_delta(s);
    t.rows.push_back({s.letter(), format_real(s.parameter()), format_real(b.lower), format_real(b.upper),
                      b.lower_sharp ? "true" : "false", b.upper_sharp ? "true" : "false"});
  }
  return t;
}

}  // namespace logcoef
