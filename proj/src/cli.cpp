#include "logcoef/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "logcoef/bounds.hpp"
#include "logcoef/classes.hpp"
#include "logcoef/functional.hpp"
#include "logcoef/search.hpp"
#include "logcoef/verify.hpp"

namespace logcoef::cli {

namespace {

constexpr int kGammaOrder = kDefaultOrder;
constexpr int kSearchResolution = 200;
constexpr int kSweepResolution = 64;
constexpr int kSweepThetas = 16;
constexpr double kEq3Tolerance = 1e-12;

std::string txt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string txt(cplx z) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

ClassSpec class_from(const RunConfig& c) {
  if (!c.class_letter) throw UsageError("--class is required");
  const std::string& l = *c.class_letter;
  auto need = [&](const std::optional<double>& v, const char* flag) {
    if (!v) throw UsageError("class " + l + " requires " + flag);
    return *v;
  };
  if (l == "S") return ClassSpec::S();
  if (l == "U") return ClassSpec::U(need(c.lambda, "--lambda"));
  if (l == "M") return ClassSpec::M(need(c.alpha, "--alpha"));
  if (l == "G") return ClassSpec::G(need(c.alpha, "--alpha"));
  throw UsageError("unknown class '" + l + "'");
}

FunctionSpec function_from(const RunConfig& c) {
  if (!c.function) throw UsageError("--function is required");
  FunctionSpec fs{*c.function};
  if (takes_lambda(fs.label)) fs.lambda = c.lambda;
  if (takes_alpha(fs.label) || fs.label == "kθα") fs.alpha = c.alpha;
  fs.theta = c.theta;
  return fs;
}

// Class whose bound a parametrized family is measured against.
ClassSpec family_class(const std::string& label, double param) {
  if (takes_lambda(label)) return ClassSpec::U(param);
  if (label == "g_alpha_upper") return ClassSpec::G(param);
  return ClassSpec::M(param);
}

std::pair<double, double> family_domain(const std::string& label, double alpha_max) {
  if (label == "f3") return {0.0, 1.0};
  if (label == "f4") return {0.5, 1.0};
  if (label == "f5") return {0.0, 0.5};
  if (label == "g_alpha_upper") return {0.0, 1.0};
  return {0.0, alpha_max};
}

// lo + k step for k >= 0 (k >= 1 when lo is excluded), snapped onto hi.
std::vector<double> grid(double lo, double hi, double step, bool include_lo) {
  std::vector<double> out;
  for (long k = include_lo ? 0 : 1;; ++k) {
    double v = lo + static_cast<double>(k) * step;
    if (v > hi + 1e-9) break;
    // 0.15 rather than 0.15000000000000002
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    v = std::strtod(buf, nullptr);
    if (std::abs(v - hi) <= 1e-9) v = hi;
    out.push_back(v);
  }
  return out;
}

void emit_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

int cmd_gamma(const RunConfig& c, std::ostream& os) {
  const AnalyticFunction f = make(function_from(c), c.order.value_or(kGammaOrder));
  const LogPair p = log_pair(f);
  const LogPair check = gamma_from_a(f.series.a(2), f.series.a(3));
  const double gap = std::max(std::abs(p.gamma1 - check.gamma1), std::abs(p.gamma2 - check.gamma2));
  const bool ok = gap <= kEq3Tolerance;
  switch (c.format) {
    case Format::kJson: {
      nlohmann::json j = to_json(f, p);
      j["coefficient_formula_gap"] = gap;
      j["pass"] = ok;
      emit_json(os, j);
      break;
    }
    case Format::kCsv: {
      CsvTable t{{"function", "order", "gamma1_re", "gamma1_im", "gamma2_re", "gamma2_im", "delta"}, {}};
      t.rows.push_back({f.display_name(), std::to_string(f.series.order()), format_real(p.gamma1.real()),
                        format_real(p.gamma1.imag()), format_real(p.gamma2.real()), format_real(p.gamma2.imag()),
                        format_real(p.delta)});
      t.write(os);
      break;
    }
    case Format::kText:
      os << "function: " << f.display_name() << "\n"
         << "order:    " << f.series.order() << "\n"
         << "a2     = " << txt(f.series.a(2)) << "\n"
         << "a3     = " << txt(f.series.a(3)) << "\n"
         << "gamma1 = " << txt(p.gamma1) << "\n"
         << "gamma2 = " << txt(p.gamma2) << "\n"
         << "delta  = " << txt(p.delta) << "\n"
         << "series log vs a2/a3 formula: max gap " << txt(gap) << (ok ? " (ok)" : " (MISMATCH)") << "\n";
      break;
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_bounds(const RunConfig& c, std::ostream& os) {
  const ClassSpec spec = class_from(c);
  const BoundPair b = bound_delta(spec);
  switch (c.format) {
    case Format::kJson: {
      nlohmann::json j = to_json(b);
      j["spec"] = to_json(spec);
      emit_json(os, j);
      break;
    }
    case Format::kCsv: bounds_table({spec}).write(os); break;
    case Format::kText:
      os << "class: " << spec.name() << "\n"
         << "lower = " << txt(b.lower) << (b.lower_sharp ? "  (sharp" : "  (not claimed sharp")
         << (b.lower_witness ? ", witness " + b.lower_witness->display_name() : std::string()) << ")\n"
         << "upper = " << txt(b.upper) << (b.upper_sharp ? "  (sharp" : "  (not claimed sharp")
         << (b.upper_witness ? ", witness " + b.upper_witness->display_name() : std::string()) << ")\n";
      if (!b.note.empty()) os << "note: " << b.note << "\n";
      break;
  }
  return kExitOk;
}

void write_membership_text(std::ostream& os, const std::string& who, const MembershipReport& r) {
  os << who << " in " << r.spec.name() << ": " << (r.pass ? "pass" : "FAIL") << "\n";
  for (std::size_t i = 0; i < r.radii.size(); ++i) {
    os << "  r=" << txt(r.radii[i]) << "  worst margin " << txt(r.radius_worst[i]) << "\n";
  }
  os << "  worst margin " << txt(r.worst_margin) << " at z=" << txt(r.witness) << " (" << r.angular
     << " angles per radius)\n";
  if (!r.singular.empty()) os << "  singular samples skipped: " << r.singular.size() << "\n";
}

int cmd_membership(const RunConfig& c, std::ostream& os) {
  const ClassSpec spec = class_from(c);
  const AnalyticFunction f = make(function_from(c), c.order.value_or(kMembershipSeriesOrder));
  const auto radii = c.radii.empty() ? kDefaultRadii : c.radii;
  const MembershipReport r = membership_test(f, spec, radii, c.angular, c.parallel);
  switch (c.format) {
    case Format::kJson: {
      nlohmann::json j = to_json(r);
      j["function"] = f.display_name();
      emit_json(os, j);
      break;
    }
    case Format::kCsv: {
      CsvTable t{{"radius", "worst_margin"}, {}};
      for (std::size_t i = 0; i < radii.size(); ++i) t.rows.push_back({format_real(radii[i]), format_real(r.radius_worst[i])});
      t.write(os);
      break;
    }
    case Format::kText: write_membership_text(os, f.display_name(), r); break;
  }
  return r.pass ? kExitOk : kExitCheckFailed;
}

int cmd_search(const RunConfig& c, std::ostream& os) {
  const ClassSpec spec = class_from(c);
  const BoundPair b = bound_delta(spec);
  const SearchResult s = body_search(spec, c.resolution.value_or(kSearchResolution), 0, true, c.parallel);
  std::optional<ScanResult> scan;
  if (c.samples > 0) scan = bound_violation_scan(spec, c.samples, c.seed);
  const bool inside = s.min_delta >= b.lower - kViolationTolerance && s.max_delta <= b.upper + kViolationTolerance;
  const bool ok = inside && (!scan || scan->violations == 0);
  switch (c.format) {
    case Format::kJson: {
      nlohmann::json j{{"search", to_json(s)}, {"bound", to_json(b)}, {"pass", ok}};
      if (scan) j["scan"] = to_json(*scan);
      emit_json(os, j);
      break;
    }
    case Format::kCsv: {
      CsvTable t{{"class", "param", "resolution", "search_min", "search_max", "bound_lower", "bound_upper"}, {}};
      t.rows.push_back({spec.letter(), format_real(spec.parameter()), std::to_string(s.resolution),
                        format_real(s.min_delta), format_real(s.max_delta), format_real(b.lower),
                        format_real(b.upper)});
      t.write(os);
      break;
    }
    case Format::kText:
      os << "relaxation body search for " << spec.name() << " (resolution " << s.resolution << ", refined)\n"
         << "  min delta " << txt(s.min_delta) << "   bound " << txt(b.lower) << "   gap "
         << txt(s.min_delta - b.lower) << "\n"
         << "  max delta " << txt(s.max_delta) << "   bound " << txt(b.upper) << "   gap "
         << txt(b.upper - s.max_delta) << "\n";
      if (scan) {
        os << "  random scan: " << scan->samples << " samples, seed " << scan->seed << ", violations "
           << scan->violations << ", sampled range [" << txt(scan->min_delta) << ", " << txt(scan->max_delta)
           << "]\n";
      }
      os << (ok ? "pass" : "FAIL") << "\n";
      break;
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const RunConfig& c, std::ostream& os) {
  if (!(c.step > 0.0)) throw UsageError("--step must be positive");
  CsvTable t;
  if (c.function) {
    const std::string label = *c.function;
    if (!takes_lambda(label) && !takes_alpha(label)) {
      throw UsageError("sweep needs a family with a lambda or alpha parameter, got '" + label + "'");
    }
    const auto [lo, hi] = family_domain(label, c.alpha_max);
    const bool lo_closed = label == "f4" || label == "m_alpha_upper" || label == "k_theta_alpha";
    const auto params = grid(lo, hi, c.step, lo_closed);
    std::vector<double> thetas;
    for (int k = 0; k < kSweepThetas; ++k) thetas.push_back(2.0 * std::numbers::pi * k / kSweepThetas);
    const auto rows = family_sweep(label, params, thetas, c.order.value_or(kGammaOrder));
    t.header = {"param", "delta_min", "delta_max", "bound_lower", "bound_upper"};
    for (const auto& r : rows) {
      const BoundPair b = bound_delta(family_class(label, r.param));
      t.rows.push_back({format_real(r.param), format_real(r.delta_min), format_real(r.delta_max),
                        format_real(b.lower), format_real(b.upper)});
    }
  } else {
    if (!c.class_letter) throw UsageError("sweep needs --class or --function");
    t = emit_sweep(*c.class_letter, c.step, c.resolution.value_or(kSweepResolution), c.alpha_max, c.parallel);
  }
  if (c.format == Format::kJson) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) {
      nlohmann::json row;
      for (std::size_t i = 0; i < t.header.size(); ++i) row[t.header[i]] = std::stod(r[i]);
      rows.push_back(row);
    }
    emit_json(os, {{"rows", rows}});
  } else {
    t.write(os);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& os) {
  const auto radii = c.radii.empty() ? kDefaultRadii : c.radii;
  VerifyReport rep;
  if (c.all) {
    rep = verify_all(radii, c.angular, c.parallel);
  } else {
    const ClassAssertion a{function_from(c), class_from(c)};
    rep.assertions.push_back(check_assertion(a, radii, c.angular, c.parallel));
    rep.ok = rep.assertions.back().ok;
  }
  switch (c.format) {
    case Format::kJson: {
      nlohmann::json rows = nlohmann::json::array();
      for (const auto& o : rep.assertions) {
        rows.push_back({{"function", to_json(o.assertion.function)},
                        {"expect_member", o.assertion.expect_member},
                        {"membership", to_json(o.membership)},
                        {"delta", o.delta},
                        {"bound", to_json(o.bound)},
                        {"delta_in_bound", o.delta_in_bound},
                        {"ok", o.ok}});
      }
      nlohmann::json wit = nlohmann::json::array();
      for (const auto& w : rep.witnesses) {
        wit.push_back({{"spec", to_json(w.spec)}, {"side", w.side}, {"witness", to_json(w.witness)},
                       {"bound", w.bound}, {"delta", w.delta}, {"ok", w.ok}});
      }
      emit_json(os, {{"assertions", rows}, {"witnesses", wit}, {"pass", rep.ok}});
      break;
    }
    case Format::kCsv: {
      CsvTable t{{"function", "class", "expect_member", "worst_margin", "member", "delta", "bound_lower",
                  "bound_upper", "ok"},
                 {}};
      for (const auto& o : rep.assertions) {
        t.rows.push_back({o.assertion.function.display_name(), o.assertion.spec.name(),
                          o.assertion.expect_member ? "true" : "false", format_real(o.membership.worst_margin),
                          o.membership.pass ? "true" : "false", format_real(o.delta), format_real(o.bound.lower),
                          format_real(o.bound.upper), o.ok ? "true" : "false"});
      }
      t.write(os);
      break;
    }
    case Format::kText: {
      os << "membership and bound containment\n";
      for (const auto& o : rep.assertions) {
        char line[256];
        std::snprintf(line, sizeof line, "  %-4s %-36s %-20s %s margin %-14.6g delta %-12.8g bound [%.8g, %.8g]\n",
                      o.ok ? "ok" : "FAIL", o.assertion.function.display_name().c_str(),
                      o.assertion.spec.name().c_str(), o.assertion.expect_member ? "member    " : "non-member",
                      o.membership.worst_margin, o.delta, o.bound.lower, o.bound.upper);
        os << line;
      }
      if (!rep.witnesses.empty()) os << "sharpness witnesses\n";
      for (const auto& w : rep.witnesses) {
        char line[256];
        std::snprintf(line, sizeof line, "  %-4s %-20s %-5s %-36s delta %-14.10g bound %.10g\n", w.ok ? "ok" : "FAIL",
                      w.spec.name().c_str(), w.side.c_str(), w.witness.display_name().c_str(), w.delta, w.bound);
        os << line;
      }
      os << (rep.ok ? "all checks passed" : "some checks FAILED") << "\n";
      break;
    }
  }
  return rep.ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

CsvTable emit_sweep(const std::string& letter, double step, int resolution, double alpha_max, bool parallel) {
  if (!(step > 0.0)) throw UsageError("--step must be positive");
  std::vector<ClassSpec> specs;
  if (letter == "U" || letter == "G") {
    for (double p : grid(0.0, 1.0, step, false)) specs.push_back(letter == "U" ? ClassSpec::U(p) : ClassSpec::G(p));
  } else if (letter == "M") {
    auto params = grid(0.0, alpha_max, step, true);
    if (alpha_max >= kMBreakpoint &&
        std::none_of(params.begin(), params.end(), [](double a) { return std::abs(a - kMBreakpoint) <= 1e-12; })) {
      params.insert(std::upper_bound(params.begin(), params.end(), kMBreakpoint), kMBreakpoint);
    }
    for (double p : params) specs.push_back(ClassSpec::M(p));
  } else {
    throw UsageError("sweep supports classes U, M, G");
  }
  CsvTable t{{"param", "bound_lower", "bound_upper", "search_min", "search_max"}, {}};
  for (const auto& s : specs) {
    const BoundPair b = bound_delta(s);
    const SearchResult r = body_search(s, resolution, 0, true, parallel);
    t.rows.push_back({format_real(s.parameter()), format_real(b.lower), format_real(b.upper),
                      format_real(r.min_delta), format_real(r.max_delta)});
  }
  return t;
}

RunConfig parse_args(const std::vector<std::string>& args, bool* help_requested, std::string* help_text) {
  CLI::App app{"Logarithmic coefficient bounds: gamma_1, gamma_2 and |gamma_2| - |gamma_1| on U, M, G and S"};
  app.name(args.empty() ? "logcoef" : args.front());
  RunConfig c;
  std::string format = "text";

  app.add_option("--class", c.class_letter, "Class: S, U, M or G")->check(CLI::IsMember({"S", "U", "M", "G"}));
  app.add_option("--lambda", c.lambda, "U(lambda) parameter, also f3/f4/f5");
  app.add_option("--alpha", c.alpha, "M(alpha)/G(alpha) parameter, also the alpha families");
  app.add_option("--function", c.function, "Catalog label");
  app.add_option("--theta", c.theta, "Rotation angle in radians");
  app.add_option("--order", c.order, "Series truncation order")->check(CLI::Range(3, 1 << 16));
  app.add_option("--resolution", c.resolution, "Body search grid resolution (>= 16)")->check(CLI::Range(16, 4096));
  app.add_option("--radii", c.radii, "Comma-separated sampling radii in (0,1)")->delimiter(',');
  app.add_option("--angular", c.angular, "Angular samples per radius")->check(CLI::Range(1, 1 << 20));
  app.add_option("--samples", c.samples, "Random body samples for the violation scan")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", c.seed, "Seed for the violation scan");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", c.out_path, "Write the report to this path instead of standard output");
  app.add_flag("--parallel", c.parallel, "Split grid work across hardware threads (same output)");
  app.add_flag("--all", c.all, "verify: run the whole catalog");
  app.add_option("--step", c.step, "sweep: parameter step");
  app.add_option("--alpha-max", c.alpha_max, "sweep: largest alpha for class M");

  const std::map<std::string, Command> commands{{"gamma", Command::kGamma},   {"bounds", Command::kBounds},
                                                {"verify", Command::kVerify}, {"search", Command::kSearch},
                                                {"sweep", Command::kSweep},   {"membership", Command::kMembership}};
  const std::map<std::string, std::string> blurbs{
      {"gamma", "Logarithmic coefficients of a catalog function"},
      {"bounds", "Closed-form bounds of |gamma_2| - |gamma_1| for a class"},
      {"verify", "Membership and bound checks (--all for the whole catalog)"},
      {"search", "Brute-force search over the proof relaxation body"},
      {"sweep", "CSV of bounds against search over a parameter range"},
      {"membership", "Sample the defining inequality of a class on a disk grid"}};
  for (const auto& [name, cmd] : commands) app.add_subcommand(name, blurbs.at(name))->fallthrough();
  app.require_subcommand(1);

  if (help_text) *help_text = app.help();
  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    if (help_requested) *help_requested = true;
    return c;
  } catch (const CLI::ParseError& e) {
    throw UsageError(std::string(e.what()) + "\n\n" + app.help());
  }
  c.command = commands.at(app.get_subcommands().front()->get_name());
  c.format = format == "json" ? Format::kJson : format == "csv" ? Format::kCsv : Format::kText;
  if (c.command == Command::kVerify && !c.all && !c.function) {
    throw UsageError("verify needs --all or --function with --class\n\n" + app.help());
  }
  return c;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* os = &out;
  if (c.out_path) {
    file.open(*c.out_path, std::ios::binary);
    if (!file) {
      err << "cannot open " << *c.out_path << " for writing\n";
      return kExitUsage;
    }
    os = &file;
  }
  switch (c.command) {
    case Command::kGamma: return cmd_gamma(c, *os);
    case Command::kBounds: return cmd_bounds(c, *os);
    case Command::kVerify: return cmd_verify(c, *os);
    case Command::kSearch: return cmd_search(c, *os);
    case Command::kSweep: return cmd_sweep(c, *os);
    case Command::kMembership: return cmd_membership(c, *os);
  }
  return kExitUsage;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    bool help = false;
    std::string help_text;
    const RunConfig c = parse_args(args, &help, &help_text);
    if (help) {
      out << help_text;
      return kExitOk;
    }
    return run(c, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kParameterRange:
      case ErrorCode::kUnknownLabel:
      case ErrorCode::kOrderTooLow:
      case ErrorCode::kUnsupported: return kExitUsage;
      default: return kExitCheckFailed;
    }
  }
}

}  // namespace logcoef::cli
