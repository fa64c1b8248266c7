#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace qwalk::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kOk = 0, kFailure = 1, kInvalidParameters = 2, kInvariantViolation = 3 };

/// Upper limit on N for the master-equation engine.
inline constexpr int kMasterEqMaxNodes = 512;

/// "10" | "10,20,40" | "10:40:x2" (geometric) | "0:1:+0.25" (arithmetic).
/// An empty list is returned when the range bounds are reversed.
std::vector<double> parse_range(const std::string& text);
std::vector<int> parse_int_range(const std::string& text);

/// Fixed 12-significant-digit decimal text.
std::string format_number(double v);
/// The value after rounding to 12 significant digits.
double round_12(double v);

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(const Table& table, std::ostream& out);
nlohmann::ordered_json to_json(const Table& table);

struct RunSpec {
  std::string command;
  std::string n = "";
  std::string l = "1";
  std::string gamma = "";
  double g = 0.25;
  std::optional<double> t;
  std::optional<double> t_end;
  double stride = 0.0;
  std::string eps = "0.01";
  int origin = 0;
  std::string engine = "closed_form";
  std::string model = "auto";
  std::string format = "csv";
  std::string out;
  int grid_points = 2048;
  std::string tv = "unhalved";
  bool skip_average = false;
};

nlohmann::ordered_json spec_to_json(const RunSpec& spec);

Table cmd_spectrum(const RunSpec& spec);
Table cmd_evolve(const RunSpec& spec);
Table cmd_mixing(const RunSpec& spec);
Table cmd_bounds(const RunSpec& spec);
Table cmd_sweep(const RunSpec& spec);

/// Full command-line entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
