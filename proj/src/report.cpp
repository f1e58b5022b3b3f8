#include "mdap/report.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "mdap/common.hpp"

namespace mdap {

namespace {

FieldSpec I(std::string n, std::string u = "") { return {std::move(n), "int", std::move(u)}; }
FieldSpec R(std::string n, std::string u = "") { return {std::move(n), "real", std::move(u)}; }
FieldSpec S(std::string n, std::string u = "") { return {std::move(n), "string", std::move(u)}; }
FieldSpec B(std::string n, std::string u = "") { return {std::move(n), "bool", std::move(u)}; }

const std::map<std::string, Schema>& registry() {
  static const std::map<std::string, Schema> reg = [] {
    std::map<std::string, Schema> m;
    auto add = [&m](Schema s) { m.emplace(s.subcommand, std::move(s)); };
    add({"count", {I("X"), I("count", "integers"), R("zeta"), S("kappa", "rational")}, {}});
    add({"density",
         {I("X"), I("count", "primes"), R("predicted", "primes"), R("ratio")}, {}});
    add({"fourier-stats",
         {R("band_lo"), R("band_hi"), R("max_relative_change"), B("in_band")},
         {I("k"), R("l1_total"), R("c_b_estimate"), R("alpha_b_estimate")}});
    add({"hybrid",
         {I("Q"), I("B"), I("points"), R("value"), R("bound"), R("ratio")}, {}});
    add({"arcs",
         {I("X"), R("C"), I("d"), I("c"), R("major_re"), R("major_im"), R("minor_re"), R("minor_im"),
          R("direct", "log-weighted count"), R("main_term", "log-weighted count"), R("conservation_error")},
         {S("kind"), I("count", "frequencies"), R("contribution_re"), R("contribution_im")}});
    add({"bv-table",
         {I("X"), I("D"), R("aggregate", "log-weighted count")},
         {I("d"), I("c_star"), R("E", "log-weighted count"), R("abs_E", "log-weighted count")}});
    add({"weighted-bv",
         {S("kind"), I("X"), I("rows"), R("aggregate", "log-weighted count"),
          R("recomputed_aggregate", "log-weighted count")},
         {I("d"), I("d1"), I("d2"), I("c"), R("E", "log-weighted count"), R("weight")}});
    add({"sieve-fns", {R("u")}, {S("function"), R("value")}});
    add({"integrals",
         {R("delta"), R("eps"), R("rho_sem"), R("rho_lin"), R("alpha"), R("u"), R("I_sem"), R("I_lin"),
          R("I_lin_scaled"), R("difference"), R("closed_form_check")}, {}});
    add({"constants",
         {I("p_limit"), R("C1"), R("C1_lo"), R("C1_hi"), R("C2"), R("C2_lo"), R("C2_hi"), R("C3"),
          R("C3_lo"), R("C3_hi"), R("singular"), R("singular_lo"), R("singular_hi"), I("mertens_y"),
          R("mertens_product"), R("mertens_predicted"), R("mertens_ratio")}, {}});
    add({"two-squares",
         {I("N"), I("in_B_count", "integers"), I("in_Bcal_count", "integers"), I("mismatches", "integers")},
         {}});
    add({"vaughan-check",
         {I("X"), I("U"), I("trials"), R("max_residual")},
         {I("trial"), I("d"), I("c"), R("theta"), R("residual")}});
    add({"mikawa",
         {I("M"), I("N"), I("X"), I("a"), I("q"), R("beta"), R("W"), R("bound"), R("ratio")}, {}});
    add({"buchstab-app",
         {I("X"), R("alpha"), I("S", "integers"), I("T", "integers"), I("total", "integers"),
          I("app_count", "primes"), I("family_size", "integers"), R("predicted_scale")}, {}});
    return m;
  }();
  return reg;
}

bool type_ok(const Json& v, const std::string& type) {
  if (type == "int") return v.is_number_integer();
  if (type == "real") return v.is_number() || v.is_null();
  if (type == "string") return v.is_string();
  if (type == "bool") return v.is_boolean();
  return false;
}

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_string()) s = v.get<std::string>();
  else if (v.is_null()) s = "";
  else s = v.dump();
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names = {
      "count", "density", "fourier-stats", "hybrid", "arcs", "bv-table", "weighted-bv",
      "sieve-fns", "integrals", "constants", "two-squares", "vaughan-check", "mikawa", "buchstab-app"};
  return names;
}

Schema report_schema(const std::string& subcommand) {
  auto it = registry().find(subcommand);
  if (it == registry().end()) throw PreconditionError("unknown subcommand: " + subcommand);
  return it->second;
}

Json schema_json(const Schema& s) {
  auto list = [](const std::vector<FieldSpec>& fs) {
    Json a = Json::array();
    for (const auto& f : fs) a.push_back({{"name", f.name}, {"type", f.type}, {"unit", f.unit}});
    return a;
  };
  return {{"subcommand", s.subcommand}, {"fields", list(s.scalars)}, {"columns", list(s.columns)}};
}

std::string format12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

Json real12(double x) {
  if (!std::isfinite(x)) return nullptr;
  double r = std::stod(format12(x));
  if (r == 0.0) r = 0.0;  // drop negative zero
  return r;
}

bool validate_report(const Json& report, const Schema& schema, std::string* why) {
  auto fail = [why](std::string m) {
    if (why) *why = std::move(m);
    return false;
  };
  if (!report.is_object()) return fail("report is not an object");
  if (report.value("subcommand", "") != schema.subcommand) return fail("subcommand mismatch");
  if (!report.contains("config") || !report["config"].is_object()) return fail("missing config");
  if (!report["config"].contains("seed")) return fail("config lacks seed");
  const Json& res = report.value("result", Json());
  if (!res.is_object() || res.size() != schema.scalars.size()) return fail("result field count");
  for (const auto& f : schema.scalars) {
    if (!res.contains(f.name)) return fail("missing field " + f.name);
    if (!type_ok(res[f.name], f.type)) return fail("bad type for " + f.name);
  }
  const Json& rows = report.value("rows", Json());
  if (!rows.is_array()) return fail("rows is not an array");
  if (schema.columns.empty() && !rows.empty()) return fail("unexpected rows");
  for (const auto& row : rows) {
    if (!row.is_object() || row.size() != schema.columns.size()) return fail("row column count");
    for (const auto& f : schema.columns) {
      if (!row.contains(f.name)) return fail("row missing " + f.name);
      if (!type_ok(row[f.name], f.type)) return fail("row bad type for " + f.name);
    }
  }
  return true;
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

std::string render_csv(const Json& report, const Schema& schema) {
  std::ostringstream os;
  os << "# config: " << report["config"].dump() << "\n";
  os << "# result: " << report["result"].dump() << "\n";
  const auto& cols = schema.columns.empty() ? schema.scalars : schema.columns;
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_cell(cols[i].name);
  os << "\n";
  auto emit = [&](const Json& obj) {
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << csv_cell(obj[cols[i].name]);
    os << "\n";
  };
  if (schema.columns.empty()) emit(report["result"]);
  else
    for (const auto& row : report["rows"]) emit(row);
  return os.str();
}

}  // namespace mdap
