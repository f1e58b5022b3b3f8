#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace mdap {

using Json = nlohmann::ordered_json;

struct FieldSpec {
  std::string name;
  std::string type;  // int, real, string, bool
  std::string unit;
};

struct Schema {
  std::string subcommand;
  std::vector<FieldSpec> scalars;
  std::vector<FieldSpec> columns;
};

const std::vector<std::string>& subcommand_names();
Schema report_schema(const std::string& subcommand);
Json schema_json(const Schema& s);

// Real value rounded to 12 significant digits; non-finite values become null.
Json real12(double x);
std::string format12(double x);

// Checks names and JSON types of result fields and row columns.
bool validate_report(const Json& report, const Schema& schema, std::string* why = nullptr);

std::string render_json(const Json& report);
std::string render_csv(const Json& report, const Schema& schema);

}  // namespace mdap
