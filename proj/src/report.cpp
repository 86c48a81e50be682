#include "polyassign/report.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

#include "polyassign/error.hpp"
#include "polyassign/format.hpp"

namespace polyassign {

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kSchema, where + ": " + what);
}

void only_keys(const Json& obj, const std::string& where, std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) schema(where, "expected an object");
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      schema(where, "unknown field '" + item.key() + "'");
    }
  }
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema(where, "missing field '" + key + "'");
  return *it;
}

double finite_number(const Json& obj, const std::string& key, const std::string& where) {
  const Json& value = field(obj, key, where);
  if (!value.is_number()) schema(where + "." + key, "expected a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) schema(where + "." + key, "expected a finite number");
  return x;
}

int integer(const Json& value, const std::string& where) {
  if (!value.is_number_integer()) {
    if (value.is_number_float() && value.get<double>() == std::floor(value.get<double>()) &&
        std::fabs(value.get<double>()) < 1e9) {
      return static_cast<int>(value.get<double>());
    }
    schema(where, "expected an integer");
  }
  const auto x = value.get<long long>();
  if (x < -1000000000LL || x > 1000000000LL) schema(where, "integer out of range");
  return static_cast<int>(x);
}

std::string text(const Json& obj, const std::string& key, const std::string& where) {
  const Json& value = field(obj, key, where);
  if (!value.is_string()) schema(where + "." + key, "expected a string");
  return value.get<std::string>();
}

std::vector<double> number_list(const Json& value, const std::string& where) {
  if (!value.is_array()) schema(where, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(number_from_json(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Json number_list_to_json(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(number_to_json(v));
  return out;
}

Claims claims_from_json(const Json& doc) {
  const std::string where = "claims";
  only_keys(doc, where, {"greedy", "opt", "ratio", "paper_ref", "steps", "notes", "slack"});
  Claims claims;
  claims.greedy = finite_number(doc, "greedy", where);
  claims.opt = finite_number(doc, "opt", where);
  claims.ratio = finite_number(doc, "ratio", where);
  claims.paper_ref = text(doc, "paper_ref", where);
  if (claims.paper_ref.empty()) schema(where + ".paper_ref", "must not be empty");
  if (doc.contains("steps")) claims.steps = number_list(doc["steps"], where + ".steps");
  if (doc.contains("notes")) claims.notes = text(doc, "notes", where);
  if (doc.contains("slack")) claims.slack = finite_number(doc, "slack", where);
  return claims;
}

Json claims_to_json(const Claims& claims) {
  Json out{{"greedy", claims.greedy}, {"opt", claims.opt}, {"ratio", claims.ratio}, {"paper_ref", claims.paper_ref}};
  if (!claims.steps.empty()) out["steps"] = claims.steps;
  if (!claims.notes.empty()) out["notes"] = claims.notes;
  if (claims.slack != 0.0) out["slack"] = claims.slack;
  return out;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

OptMethod parse_method(const std::string& name) {
  if (name == "bruteforce") return OptMethod::kBruteForce;
  if (name == "matching") return OptMethod::kMatching;
  throw Error(ErrorCode::kParse, "unknown OPT method '" + name + "'");
}

}  // namespace

Json number_to_json(double value) {
  if (std::isfinite(value)) return value;
  return format_number(value);
}

double number_from_json(const Json& value, const std::string& where) {
  if (value.is_number()) return value.get<double>();
  if (value.is_string()) {
    const std::string s = value.get<std::string>();
    if (s == "inf" || s == "-inf") return parse_number(s);
  }
  schema(where, "expected a number");
}

Json shape_to_json(const Shape& shape) {
  switch (shape.kind()) {
    case ShapeKind::kEquilateralTriangle:
      return Json{{"kind", "triangle"}, {"S", shape.primary_length()}};
    case ShapeKind::kRectangle:
      return Json{{"kind", "rectangle"}, {"w", shape.primary_length()}, {"h", shape.secondary_length()}};
    case ShapeKind::kRegularPolygon:
      return Json{{"kind", "polygon"}, {"n", shape.facility_count()}, {"d", shape.primary_length()}};
    case ShapeKind::kFacilityRing:
      return Json{{"kind", "ring"},
                  {"profile", std::string(to_string(shape.profile()))},
                  {"n", shape.facility_count()},
                  {"d", shape.primary_length()}};
  }
  return Json{};
}

Shape shape_from_json(const Json& doc, const std::string& where) {
  if (!doc.is_object()) schema(where, "expected an object");
  const std::string kind = text(doc, "kind", where);
  try {
    if (kind == "triangle") {
      only_keys(doc, where, {"kind", "S"});
      return Shape::triangle(finite_number(doc, "S", where));
    }
    if (kind == "rectangle") {
      only_keys(doc, where, {"kind", "w", "h"});
      return Shape::rectangle(finite_number(doc, "w", where), finite_number(doc, "h", where));
    }
    if (kind == "polygon") {
      only_keys(doc, where, {"kind", "n", "d"});
      return Shape::polygon(integer(field(doc, "n", where), where + ".n"), finite_number(doc, "d", where));
    }
    if (kind == "ring") {
      only_keys(doc, where, {"kind", "profile", "n", "d"});
      return Shape::ring(parse_gap_profile(text(doc, "profile", where)),
                         finite_number(doc, "d", where), integer(field(doc, "n", where), where + ".n"));
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) schema(where, e.what());
    throw;
  }
  schema(where + ".kind", "unknown shape kind '" + kind + "'");
}

Scenario scenario_from_json(const Json& doc) {
  const std::string where = "scenario";
  only_keys(doc, where, {"name", "shape", "metric", "capacities", "arrivals", "claims"});
  Scenario sc;
  sc.name = doc.contains("name") ? text(doc, "name", where) : std::string("scenario");
  sc.shape = shape_from_json(field(doc, "shape", where));
  try {
    sc.metric = parse_metric(text(doc, "metric", where));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument) schema("metric", e.what());
    throw;
  }

  if (doc.contains("capacities")) {
    const Json& caps = doc["capacities"];
    if (!caps.is_array()) schema("capacities", "expected an array");
    for (std::size_t j = 0; j < caps.size(); ++j) {
      sc.capacities.push_back(integer(caps[j], "capacities[" + std::to_string(j) + "]"));
    }
  } else {
    sc.capacities.assign(static_cast<std::size_t>(sc.shape.facility_count()), 1);
  }

  const Json& arrivals = field(doc, "arrivals", where);
  if (!arrivals.is_array()) schema("arrivals", "expected an array");
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    const std::string at = "arrivals[" + std::to_string(i) + "]";
    if (!arrivals[i].is_number()) schema(at, "expected a number");
    const double s = arrivals[i].get<double>();
    if (!std::isfinite(s)) schema(at, "expected a finite number");
    sc.arrivals.push_back(BoundaryPoint{s});
  }
  if (doc.contains("claims")) sc.claims = claims_from_json(doc["claims"]);
  validate(sc);
  return sc;
}

Scenario parse_scenario(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into a line/column for the message.
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto before = text.substr(0, offset);
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(before.begin(), before.end(), '\n'));
    const auto last_newline = before.rfind('\n');
    const std::size_t column = last_newline == std::string_view::npos ? offset + 1 : offset - last_newline;
    throw Error(ErrorCode::kParse, "malformed JSON at line " + std::to_string(line) + ", column " +
                                       std::to_string(column) + ": " + e.what());
  }
  return scenario_from_json(doc);
}

Json to_json(const Scenario& scenario) {
  Json arrivals = Json::array();
  for (const auto& p : scenario.arrivals) arrivals.push_back(p.s);
  Json out{{"name", scenario.name},
           {"shape", shape_to_json(scenario.shape)},
           {"metric", std::string(to_string(scenario.metric))},
           {"capacities", scenario.capacities},
           {"arrivals", arrivals}};
  if (scenario.claims) out["claims"] = claims_to_json(*scenario.claims);
  return out;
}

Json to_json(const RunResult& run) {
  Json steps = Json::array();
  for (const Assignment& a : run.greedy.steps) {
    steps.push_back(Json{{"customer", a.customer}, {"facility", a.facility}, {"cost", a.cost}});
  }
  Json arrivals = Json::array();
  for (const auto& p : run.arrivals) arrivals.push_back(p.s);
  return Json{{"name", run.name},
              {"arrivals", arrivals},
              {"greedy", steps},
              {"greedy_total", run.greedy.total_cost},
              {"opt", Json{{"assignment", run.opt.assignment},
                           {"costs", run.opt.costs},
                           {"method", std::string(to_string(run.opt.method))}}},
              {"opt_total", run.opt.total_cost},
              {"ratio", number_to_json(run.ratio)}};
}

RunResult run_from_json(const Json& doc) {
  RunResult run;
  run.name = doc.at("name").get<std::string>();
  for (const auto& s : doc.at("arrivals")) run.arrivals.push_back(BoundaryPoint{s.get<double>()});
  for (const auto& step : doc.at("greedy")) {
    run.greedy.steps.push_back(
        Assignment{step.at("customer").get<int>(), step.at("facility").get<int>(), step.at("cost").get<double>()});
  }
  run.greedy.total_cost = doc.at("greedy_total").get<double>();
  run.opt.assignment = doc.at("opt").at("assignment").get<std::vector<int>>();
  run.opt.costs = doc.at("opt").at("costs").get<std::vector<double>>();
  run.opt.method = parse_method(doc.at("opt").at("method").get<std::string>());
  run.opt.total_cost = doc.at("opt_total").get<double>();
  run.ratio = number_from_json(doc.at("ratio"), "ratio");
  return run;
}

Json to_json(const ClaimVerdict& row) {
  return Json{{"claim_id", row.claim_id},
              {"paper_ref", row.paper_ref},
              {"kind", row.kind == RowKind::kClaim ? "claim" : "lemma"},
              {"claimed_greedy", number_to_json(row.claimed_greedy)},
              {"computed_greedy", number_to_json(row.computed_greedy)},
              {"claimed_opt", number_to_json(row.claimed_opt)},
              {"computed_opt", number_to_json(row.computed_opt)},
              {"opt_method", std::string(to_string(row.opt_method))},
              {"claimed_ratio", number_to_json(row.claimed_ratio)},
              {"ratio_vs_true_opt", number_to_json(row.ratio_vs_true_opt)},
              {"ratio_vs_claimed_opt", number_to_json(row.ratio_vs_claimed_opt)},
              {"verdict_greedy", std::string(to_string(row.verdict_greedy))},
              {"verdict_opt", std::string(to_string(row.verdict_opt))},
              {"verdict_ratio", std::string(to_string(row.verdict_ratio))},
              {"claimed_steps", number_list_to_json(row.claimed_steps)},
              {"computed_steps", number_list_to_json(row.computed_steps)},
              {"verdict_steps", std::string(to_string(row.verdict_steps))},
              {"tolerance", row.tolerance},
              {"notes", row.notes}};
}

ClaimVerdict verdict_from_json(const Json& doc) {
  ClaimVerdict row;
  row.claim_id = doc.at("claim_id").get<std::string>();
  row.paper_ref = doc.at("paper_ref").get<std::string>();
  row.kind = doc.at("kind").get<std::string>() == "lemma" ? RowKind::kLemmaBound : RowKind::kClaim;
  row.claimed_greedy = number_from_json(doc.at("claimed_greedy"), "claimed_greedy");
  row.computed_greedy = number_from_json(doc.at("computed_greedy"), "computed_greedy");
  row.claimed_opt = number_from_json(doc.at("claimed_opt"), "claimed_opt");
  row.computed_opt = number_from_json(doc.at("computed_opt"), "computed_opt");
  row.opt_method = parse_method(doc.at("opt_method").get<std::string>());
  row.claimed_ratio = number_from_json(doc.at("claimed_ratio"), "claimed_ratio");
  row.ratio_vs_true_opt = number_from_json(doc.at("ratio_vs_true_opt"), "ratio_vs_true_opt");
  row.ratio_vs_claimed_opt = number_from_json(doc.at("ratio_vs_claimed_opt"), "ratio_vs_claimed_opt");
  row.verdict_greedy = parse_verdict(doc.at("verdict_greedy").get<std::string>());
  row.verdict_opt = parse_verdict(doc.at("verdict_opt").get<std::string>());
  row.verdict_ratio = parse_verdict(doc.at("verdict_ratio").get<std::string>());
  row.claimed_steps = number_list(doc.at("claimed_steps"), "claimed_steps");
  row.computed_steps = number_list(doc.at("computed_steps"), "computed_steps");
  row.verdict_steps = parse_verdict(doc.at("verdict_steps").get<std::string>());
  row.tolerance = doc.at("tolerance").get<double>();
  row.notes = doc.at("notes").get<std::string>();
  return row;
}

Json to_json(const std::vector<ClaimVerdict>& ledger) {
  Json rows = Json::array();
  for (const auto& row : ledger) rows.push_back(to_json(row));
  return rows;
}

std::vector<ClaimVerdict> ledger_from_json(const Json& doc) {
  std::vector<ClaimVerdict> out;
  for (const auto& row : doc) out.push_back(verdict_from_json(row));
  return out;
}

Json to_json(const SearchResult& result) {
  Json seq = Json::array();
  for (const auto& p : result.best_sequence) seq.push_back(p.s);
  return Json{{"best_sequence", seq},
              {"best_ratio", number_to_json(result.best_ratio)},
              {"greedy_cost", result.greedy_cost},
              {"opt_cost", result.opt_cost},
              {"iterations_used", result.iterations_used},
              {"best_restart", result.best_restart}};
}

SearchResult search_from_json(const Json& doc) {
  SearchResult result;
  for (const auto& s : doc.at("best_sequence")) result.best_sequence.push_back(BoundaryPoint{s.get<double>()});
  result.best_ratio = number_from_json(doc.at("best_ratio"), "best_ratio");
  result.greedy_cost = doc.at("greedy_cost").get<double>();
  result.opt_cost = doc.at("opt_cost").get<double>();
  result.iterations_used = doc.at("iterations_used").get<int>();
  result.best_restart = doc.at("best_restart").get<int>();
  return result;
}

Json to_json(const SweepResult& sweep) {
  Json samples = Json::array();
  for (const auto& s : sweep.samples) {
    samples.push_back(Json{{"s", s.s},
                           {"facility", s.facility},
                           {"greedy_cost", s.greedy_cost},
                           {"greedy_total", s.greedy_total},
                           {"opt_total", s.opt_total}});
  }
  Json switches = Json::array();
  for (const auto& w : sweep.switches) switches.push_back(Json{{"s", w.s}, {"from", w.from}, {"to", w.to}});
  return Json{{"samples", samples}, {"switches", switches}};
}

Json to_json(const std::vector<CurvePoint>& curve) {
  Json out = Json::array();
  for (const auto& p : curve) out.push_back(Json{{"x", p.x}, {"R", p.r}, {"R_prime", p.r_prime}});
  return out;
}

std::string ledger_to_csv(const std::vector<ClaimVerdict>& ledger) {
  std::string out(kLedgerCsvHeader);
  out += '\n';
  for (const auto& row : ledger) {
    out += csv_field(row.claim_id) + ',' + csv_field(row.paper_ref) + ',' + format_number(row.claimed_greedy) + ',' +
           format_number(row.computed_greedy) + ',' + format_number(row.claimed_opt) + ',' +
           format_number(row.computed_opt) + ',' + format_number(row.claimed_ratio) + ',' +
           format_number(row.ratio_vs_true_opt) + ',' + format_number(row.ratio_vs_claimed_opt) + ',' +
           std::string(to_string(row.verdict_greedy)) + ',' + std::string(to_string(row.verdict_opt)) + ',' +
           std::string(to_string(row.verdict_ratio)) + ',' + csv_field(row.notes) + '\n';
  }
  return out;
}

std::string run_to_csv(const RunResult& run) {
  std::string out(kRunCsvHeader);
  out += '\n';
  for (std::size_t i = 0; i < run.greedy.steps.size(); ++i) {
    const Assignment& g = run.greedy.steps[i];
    const int opt_facility = run.opt.assignment[i];
    out += std::to_string(i) + ',' + format_number(run.arrivals[i].s) + ',' + std::to_string(g.facility) + ',' +
           format_number(g.cost) + ',' + std::to_string(opt_facility) + ',' + format_number(run.opt.costs[i]) + '\n';
  }
  out += "total,,," + format_number(run.greedy.total_cost) + ",," + format_number(run.opt.total_cost) + '\n';
  return out;
}

std::string curve_to_csv(const std::vector<CurvePoint>& curve) {
  std::string out(kCurveCsvHeader);
  out += '\n';
  for (const auto& p : curve) {
    out += format_number(p.x) + ',' + format_number(p.r) + ',' + format_number(p.r_prime) + '\n';
  }
  return out;
}

std::string sweep_to_csv(const SweepResult& sweep) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& s : sweep.samples) {
    out += format_number(s.s) + ',' + std::to_string(s.facility) + ',' + format_number(s.greedy_cost) + ',' +
           format_number(s.greedy_total) + ',' + format_number(s.opt_total) + '\n';
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false;
  bool row_open = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell += c;
      }
      continue;
    }
    row_open = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(cell));
      cell.clear();
    } else if (c == '\n') {
      row.push_back(std::move(cell));
      cell.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_open = false;
    } else if (c != '\r') {
      cell += c;
    }
  }
  if (quoted) throw Error(ErrorCode::kParse, "unterminated quoted CSV field");
  if (row_open) {
    row.push_back(std::move(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ClaimVerdict> ledger_from_csv(std::string_view text) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorCode::kParse, "empty ledger CSV");
  std::string header;
  for (std::size_t i = 0; i < rows[0].size(); ++i) header += (i ? "," : "") + rows[0][i];
  if (header != kLedgerCsvHeader) throw Error(ErrorCode::kParse, "unexpected ledger CSV header");
  std::vector<ClaimVerdict> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r];
    if (f.size() != 13) throw Error(ErrorCode::kParse, "ledger CSV row " + std::to_string(r) + " has wrong width");
    ClaimVerdict v;
    v.claim_id = f[0];
    v.paper_ref = f[1];
    v.claimed_greedy = parse_number(f[2]);
    v.computed_greedy = parse_number(f[3]);
    v.claimed_opt = parse_number(f[4]);
    v.computed_opt = parse_number(f[5]);
    v.claimed_ratio = parse_number(f[6]);
    v.ratio_vs_true_opt = parse_number(f[7]);
    v.ratio_vs_claimed_opt = parse_number(f[8]);
    v.verdict_greedy = parse_verdict(f[9]);
    v.verdict_opt = parse_verdict(f[10]);
    v.verdict_ratio = parse_verdict(f[11]);
    v.notes = f[12];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace polyassign
