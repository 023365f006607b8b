#include "subfeas/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "subfeas/errors.hpp"

namespace subfeas::io {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(where + ": unknown key '" + key + "'");
  }
}

double get_real(const json& obj, const char* key, const std::string& where, std::optional<double> fallback = {}) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ParseError(where + ": missing '" + key + "'");
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ParseError(where + ": '" + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(where + ": '" + key + "' must be finite");
  return d;
}

Vector get_vector(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ParseError(where + ": expected a nonempty array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ParseError(where + ": array entries must be numbers");
    out.push_back(e.get<double>());
  }
  Vector x(std::move(out));
  if (!x.is_finite()) throw ParseError(where + ": entries must be finite");
  return x;
}

std::uint64_t get_count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw ParseError(where + ": expected a positive integer");
  return v.get<std::uint64_t>();
}

ConstraintOracle parse_oracle(const json& d, const std::string& where) {
  require_keys(d, {"kind", "params", "coordinate"}, where);
  if (!d.contains("kind") || !d.at("kind").is_string()) throw ParseError(where + ": missing string 'kind'");
  const auto kind = d.at("kind").get<std::string>();
  const json params = d.contains("params") ? d.at("params") : json::object();
  std::size_t coordinate = 0;
  if (d.contains("coordinate")) {
    const auto& c = d.at("coordinate");
    if (!c.is_number_integer() || c.get<std::int64_t>() < 0)
      throw ParseError(where + ": 'coordinate' must be a nonnegative integer");
    coordinate = c.get<std::size_t>();
  }

  try {
    if (kind == "linear") {
      if (d.contains("coordinate")) throw ParseError(where + ": linear takes no 'coordinate'");
      require_keys(params, {"a", "b"}, where + ".params");
      if (!params.contains("a")) throw ParseError(where + ".params: missing 'a'");
      return linear(get_vector(params.at("a"), where + ".params.a"), get_real(params, "b", where + ".params", 0.0));
    }
    if (kind == "huber" || kind == "truncated_huber") {
      require_keys(params, {"center", "offset"}, where + ".params");
      const double center = get_real(params, "center", where + ".params", 0.0);
      const double offset = get_real(params, "offset", where + ".params", 0.0);
      return kind == "huber" ? huber(coordinate, center, offset) : truncated_huber(coordinate, center, offset);
    }
    if (kind == "max") {
      if (d.contains("coordinate")) throw ParseError(where + ": max takes no 'coordinate'");
      require_keys(params, {"children"}, where + ".params");
      if (!params.contains("children") || !params.at("children").is_array() || params.at("children").empty())
        throw ParseError(where + ".params: 'children' must be a nonempty array");
      std::vector<ConstraintOracle> children;
      std::size_t j = 0;
      for (const auto& c : params.at("children")) {
        children.push_back(parse_oracle(c, where + ".children[" + std::to_string(j++) + "]"));
      }
      return pointwise_max(std::move(children));
    }
  } catch (const PreconditionError& e) {
    throw ParseError(where + ": " + e.what());
  }
  throw ParseError(where + ": unknown kind '" + kind + "'");
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(std::string_view token, const std::string& where) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty() || !std::isfinite(v)) {
    throw ParseError(where + ": '" + std::string(token) + "' is not a finite real number");
  }
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto next = line.find_first_of(", \t", pos);
    const auto field = line.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
    if (!trim(field).empty()) out.push_back(trim(field));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

json vector_json(const Vector& v) {
  json arr = json::array();
  for (double c : v) arr.push_back(c);
  return arr;
}

}  // namespace

ProblemFile parse_problem(const json& doc) {
  require_keys(doc, {"dimension", "constraints", "slater", "defaults"}, "problem");
  if (!doc.contains("dimension")) throw ParseError("problem: missing 'dimension'");
  const auto n = get_count(doc.at("dimension"), "problem.dimension");
  if (!doc.contains("constraints") || !doc.at("constraints").is_array() || doc.at("constraints").empty()) {
    throw ParseError("problem: 'constraints' must be a nonempty array");
  }
  std::vector<ConstraintOracle> constraints;
  std::size_t i = 0;
  for (const auto& c : doc.at("constraints")) {
    constraints.push_back(parse_oracle(c, "constraints[" + std::to_string(i++) + "]"));
  }

  std::optional<SlaterCertificate> cert;
  if (doc.contains("slater")) {
    const auto& s = doc.at("slater");
    require_keys(s, {"s", "sigma", "L"}, "slater");
    if (!s.contains("s")) throw ParseError("slater: missing 's'");
    cert = SlaterCertificate{get_vector(s.at("s"), "slater.s"), get_real(s, "sigma", "slater"),
                             get_real(s, "L", "slater")};
  }

  ProblemFile out{[&] {
    try {
      return FeasibilityProblem(n, std::move(constraints), cert);
    } catch (const Error& e) {
      throw ParseError(std::string("problem: ") + e.what());
    }
  }(), std::nullopt, std::nullopt};

  if (cert) {
    const auto report = validate_certificate(out.problem, *cert);
    if (!report.valid()) {
      std::string msg = "slater: invalid certificate:";
      for (const auto& r : report.problems()) msg += " " + r + ";";
      throw ParseError(msg);
    }
  }

  if (doc.contains("defaults")) {
    const auto& d = doc.at("defaults");
    require_keys(d, {"tolerance", "budget"}, "defaults");
    if (d.contains("tolerance")) {
      const double tol = get_real(d, "tolerance", "defaults");
      if (tol < 0.0) throw ParseError("defaults: 'tolerance' must be nonnegative");
      out.tolerance = tol;
    }
    if (d.contains("budget")) out.budget = get_count(d.at("budget"), "defaults.budget");
  }
  return out;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  auto in = open_input(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  return parse_problem(doc);
}

json oracle_to_json(const ConstraintOracle& oracle) {
  return std::visit(overloaded{
                        [](const LinearFunctional& f) {
                          return json{{"kind", "linear"}, {"params", {{"a", vector_json(f.a)}, {"b", f.b}}}};
                        },
                        [](const HuberFunction& f) {
                          return json{{"kind", "huber"},
                                      {"coordinate", f.coordinate},
                                      {"params", {{"center", f.center}, {"offset", f.offset}}}};
                        },
                        [](const TruncatedHuberFunction& f) {
                          return json{{"kind", "truncated_huber"},
                                      {"coordinate", f.coordinate},
                                      {"params", {{"center", f.center}, {"offset", f.offset}}}};
                        },
                        [](const PointwiseMax& f) {
                          json children = json::array();
                          for (const auto& c : f.children) children.push_back(oracle_to_json(c));
                          return json{{"kind", "max"}, {"params", {{"children", children}}}};
                        },
                    },
                    oracle.descriptor());
}

json problem_to_json(const FeasibilityProblem& p, std::optional<double> tolerance,
                     std::optional<std::uint64_t> budget) {
  json doc;
  doc["dimension"] = p.dimension();
  doc["constraints"] = json::array();
  for (const auto& c : p.constraints()) doc["constraints"].push_back(oracle_to_json(c));
  if (p.slater()) {
    doc["slater"] = {{"s", vector_json(p.slater()->s)}, {"sigma", p.slater()->sigma}, {"L", p.slater()->L}};
  }
  if (tolerance || budget) {
    doc["defaults"] = json::object();
    if (tolerance) doc["defaults"]["tolerance"] = *tolerance;
    if (budget) doc["defaults"]["budget"] = *budget;
  }
  return doc;
}

StepSchedule parse_explicit_steps(std::istream& in) {
  std::vector<double> alphas;
  TailRule tail = TailRule::none;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto body = trim(std::string_view(line));
    if (body.empty() || body.front() == '#') continue;
    if (body.starts_with("tail:")) {
      const auto rule = trim(body.substr(5));
      if (rule == "repeat_last") tail = TailRule::repeat_last;
      else if (rule == "zero") tail = TailRule::zero;
      else if (rule == "none") tail = TailRule::none;
      else throw ParseError("explicit schedule line " + std::to_string(lineno) + ": unknown tail rule");
      continue;
    }
    for (auto field : split_fields(body)) {
      alphas.push_back(parse_real(field, "explicit schedule line " + std::to_string(lineno)));
    }
  }
  try {
    return StepSchedule::explicit_list(std::move(alphas), tail);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

StepSchedule parse_schedule(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("schedule '" + std::string(text) + "': expected <kind>:<argument>");
  }
  const auto kind = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  try {
    if (kind == "constant") return StepSchedule::constant(parse_real(arg, "constant schedule"));
    if (kind == "harmonic") return StepSchedule::harmonic(parse_real(arg, "harmonic schedule"));
    if (kind == "normalized") return StepSchedule::normalized(parse_schedule(arg));
    if (kind == "explicit") {
      auto in = open_input(std::filesystem::path(std::string(arg)));
      return parse_explicit_steps(in);
    }
  } catch (const PreconditionError& e) {
    throw ParseError("schedule '" + std::string(text) + "': " + e.what());
  }
  throw ParseError("schedule '" + std::string(text) + "': unknown kind '" + std::string(kind) + "'");
}

Vector parse_vector(std::string_view text) {
  std::vector<double> out;
  for (auto field : split_fields(text)) out.push_back(parse_real(field, "vector"));
  if (out.empty()) throw ParseError("vector: no coordinates in '" + std::string(text) + "'");
  return Vector(std::move(out));
}

LinearDataset parse_dataset(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  bool labeled = false;
  bool seen_data = false;
  std::vector<Vector> points;
  std::vector<int> labels;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(std::string_view(line));
    if (body.empty()) continue;
    if (body.front() == '#') {
      if (body == "#labeled") {
        if (seen_data) throw ParseError("line " + std::to_string(lineno) + ": #labeled must precede data");
        labeled = true;
      }
      continue;
    }
    seen_data = true;
    const std::string where = "line " + std::to_string(lineno);
    std::vector<double> values;
    for (auto f : split_fields(body)) values.push_back(parse_real(f, where));
    if (labeled) {
      if (values.size() < 2) throw ParseError(where + ": labeled rows need coordinates and a label");
      const double y = values.back();
      if (y != 1.0 && y != -1.0) throw ParseError(where + ": label must be +1 or -1");
      labels.push_back(y > 0 ? 1 : -1);
      values.pop_back();
    }
    if (!points.empty() && values.size() != points.front().size()) {
      throw ParseError(where + ": expected " + std::to_string(points.front().size()) + " columns");
    }
    points.emplace_back(std::move(values));
  }
  if (points.empty()) throw ParseError("dataset has no rows");
  try {
    return labeled ? LinearDataset::from_labeled(points, labels) : LinearDataset(std::move(points));
  } catch (const Error& e) {
    throw ParseError(std::string("dataset: ") + e.what());
  }
}

LinearDataset load_dataset(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_dataset(in);
}

void write_dataset(std::ostream& out, const LinearDataset& ds) {
  for (const auto& row : ds.rows()) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_real(row[j]);
    out << '\n';
  }
}

std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void append_vector(std::string& s, const Vector& v) {
  s += '[';
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j) s += ',';
    s += format_real(v[j]);
  }
  s += ']';
}

std::optional<MonitorFlag> flag_from_string(const std::string& name) {
  for (std::size_t f = 0; f < kMonitorFlagCount; ++f) {
    if (to_string(static_cast<MonitorFlag>(f)) == name) return static_cast<MonitorFlag>(f);
  }
  return std::nullopt;
}

}  // namespace

std::string trace_line(const IterationRecord& rec) {
  std::string s = "{\"k\":" + std::to_string(rec.k) + ",\"x\":";
  append_vector(s, rec.x);
  s += ",\"i\":" + std::to_string(rec.i);
  s += ",\"f\":" + format_real(rec.f_value);
  s += ",\"g\":";
  append_vector(s, rec.g);
  s += ",\"g_norm\":" + format_real(rec.g_norm);
  s += ",\"alpha\":" + format_real(rec.alpha);
  s += ",\"delta\":" + (rec.delta ? format_real(*rec.delta) : std::string("null"));
  s += ",\"flags\":[";
  bool first = true;
  for (auto f : rec.flags.list()) {
    if (!first) s += ',';
    s += '"' + to_string(f) + '"';
    first = false;
  }
  s += "]}";
  return s;
}

void write_trace(std::ostream& out, const std::vector<IterationRecord>& trace, const json& summary) {
  for (const auto& rec : trace) out << trace_line(rec) << '\n';
  out << json{{"summary", summary}}.dump() << '\n';
}

TraceFile read_trace(std::istream& in) {
  TraceFile out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(std::string_view(line)).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
    if (obj.contains("summary")) {
      out.summary = obj.at("summary");
      continue;
    }
    try {
      IterationRecord rec;
      rec.k = obj.at("k").get<std::uint64_t>();
      rec.x = Vector(obj.at("x").get<std::vector<double>>());
      rec.i = obj.at("i").get<std::size_t>();
      rec.f_value = obj.at("f").get<double>();
      rec.g = Vector(obj.at("g").get<std::vector<double>>());
      rec.g_norm = obj.at("g_norm").get<double>();
      rec.alpha = obj.at("alpha").get<double>();
      if (!obj.at("delta").is_null()) rec.delta = obj.at("delta").get<double>();
      for (const auto& f : obj.at("flags")) {
        const auto flag = flag_from_string(f.get<std::string>());
        if (!flag) throw ParseError("unknown flag");
        rec.flags.set(*flag);
      }
      out.records.push_back(std::move(rec));
    } catch (const json::exception& e) {
      throw ParseError("trace line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

json summary_json(const SolveOutcome& outcome) {
  json s;
  s["verdict"] = to_string(outcome.verdict);
  s["steps"] = outcome.steps;
  s["x"] = vector_json(outcome.x);
  s["residual"] = outcome.final_residual;
  s["budget"] = outcome.budget;
  s["iteration_bound"] = outcome.bound_used ? json(*outcome.bound_used) : json(nullptr);
  s["period"] = outcome.period ? json(*outcome.period) : json(nullptr);
  json counts = json::object();
  for (std::size_t f = 0; f < kMonitorFlagCount; ++f) {
    counts[to_string(static_cast<MonitorFlag>(f))] = outcome.flag_counts[f];
  }
  s["monitor_flags"] = counts;
  return s;
}

}  // namespace subfeas::io
