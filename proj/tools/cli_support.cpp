#include "cli_support.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qwalk/coherent.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/large_decoherence.hpp"
#include "qwalk/master_eq.hpp"
#include "qwalk/mixing.hpp"
#include "qwalk/network.hpp"

namespace qwalk::cli {

namespace {

double parse_number(const std::string& raw) {
  std::string s = raw;
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw ParameterError("empty number in range '" + raw + "'");
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("not a number: '" + raw + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ParameterError("not a number: '" + raw + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

int to_int(double v, const char* what) {
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw ParameterError(std::string(what) + " must be an integer");
  return static_cast<int>(v);
}

double single(const std::string& text, const char* what) {
  const auto values = parse_range(text);
  if (values.size() != 1)
    throw ParameterError(std::string(what) + " takes a single value for this command");
  return values.front();
}

int single_int(const std::string& text, const char* what) {
  return to_int(single(text, what), what);
}

MixingEngine parse_engine(const std::string& name) {
  if (name == "closed_form") return MixingEngine::closed_form;
  if (name == "master_eq") return MixingEngine::master_eq;
  throw ParameterError("unknown engine '" + name + "'");
}

TvConvention parse_tv(const std::string& name) {
  if (name == "unhalved") return TvConvention::unhalved;
  if (name == "halved") return TvConvention::halved;
  throw ParameterError("unknown tv convention '" + name + "'");
}

Cell opt_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string s;
  for (const auto& f : flags) {
    if (!s.empty()) s += ';';
    s += f;
  }
  return s;
}

const std::vector<std::string> kMixingColumns = {
    "n",         "l",           "gamma",          "eps",
    "engine",    "t_ins",       "t_ave",          "ins_lower_exact",
    "ins_lower_asym", "ins_upper", "ave_lower",   "ave_upper",
    "flags"};

std::vector<Cell> mixing_row(const MixingReport& r) {
  return {static_cast<long long>(r.nodes),
          static_cast<long long>(r.range),
          r.gamma,
          r.epsilon,
          std::string(to_string(r.engine)),
          opt_cell(r.t_ins_measured),
          opt_cell(r.t_ave_measured),
          opt_cell(r.ins_lower_exact),
          opt_cell(r.ins_lower_asym),
          r.ins_upper,
          r.ave_lower,
          r.ave_upper,
          join_flags(r.flags())};
}

MixingOptions mixing_options(const RunSpec& spec, double eps) {
  MixingOptions opt;
  opt.epsilon = eps;
  opt.engine = parse_engine(spec.engine);
  opt.crossing.grid_points = spec.grid_points;
  opt.convention = parse_tv(spec.tv);
  opt.measure_average = !spec.skip_average;
  opt.hopping = spec.g;
  opt.origin = spec.origin;
  return opt;
}

void check_engine_size(const RunSpec& spec, int nodes) {
  if (spec.engine == "master_eq" && nodes > kMasterEqMaxNodes)
    throw ParameterError("master_eq engine is limited to N <= " +
                         std::to_string(kMasterEqMaxNodes));
}

void check_common(const RunSpec& spec) {
  if (spec.grid_points < 2) throw ParameterError("grid-points must be at least 2");
  if (!(spec.g > 0.0)) throw ParameterError("g must be positive");
  parse_engine(spec.engine);
  parse_tv(spec.tv);
}

void check_normalized(const ProbabilityDist& d, double t) {
  const double total = d.total();
  if (!(std::abs(total - 1.0) <= 1e-8) || !(d.min_value() >= -1e-8))
    throw InvariantError("distribution at t=" + format_number(t) +
                         " is not normalized (sum " + format_number(total) + ")");
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) return nullptr;
        else if constexpr (std::is_same_v<V, double>) return round_12(v);
        else return v;
      },
      c);
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) return "";
        else if constexpr (std::is_same_v<V, double>) return format_number(v);
        else if constexpr (std::is_same_v<V, long long>) return std::to_string(v);
        else return v;
      },
      c);
}

nlohmann::ordered_json range_json(const std::string& text) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  try {
    for (double v : parse_range(text)) {
      if (v == std::floor(v) && std::abs(v) < 1e15) arr.push_back(static_cast<long long>(v));
      else arr.push_back(round_12(v));
    }
  } catch (const ParameterError&) {
    return text;
  }
  if (arr.size() == 1) return arr.front();
  return arr;
}

}  // namespace

std::vector<double> parse_range(const std::string& text) {
  if (text.empty()) throw ParameterError("empty value");
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3 || parts[2].size() < 2)
      throw ParameterError("range must look like a:b:xF or a:b:+S, got '" + text + "'");
    const double lo = parse_number(parts[0]);
    const double hi = parse_number(parts[1]);
    const char kind = parts[2][0];
    const double step = parse_number(parts[2].substr(1));
    std::vector<double> out;
    const double slack = 1e-9 * std::max(std::abs(lo), std::abs(hi));
    if (kind == 'x') {
      if (!(step > 1.0) || !(lo > 0.0))
        throw ParameterError("geometric range needs a factor > 1 and a positive start");
      for (int i = 0;; ++i) {
        const double v = lo * std::pow(step, i);
        if (v > hi + slack) break;
        out.push_back(v);
      }
    } else if (kind == '+') {
      if (!(step > 0.0)) throw ParameterError("arithmetic range needs a positive step");
      for (long i = 0;; ++i) {
        const double v = lo + step * static_cast<double>(i);
        if (v > hi + slack) break;
        out.push_back(v);
      }
    } else {
      throw ParameterError("range step must start with 'x' or '+', got '" + parts[2] + "'");
    }
    return out;
  }
  std::vector<double> out;
  for (const auto& p : split(text, ',')) out.push_back(parse_number(p));
  return out;
}

std::vector<int> parse_int_range(const std::string& text) {
  std::vector<int> out;
  for (double v : parse_range(text)) out.push_back(to_int(std::round(v * 1e6) / 1e6, "value"));
  return out;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double round_12(double v) {
  const std::string s = format_number(v);
  double out = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
    out << '\n';
  }
}

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
    results.push_back(std::move(obj));
  }
  return results;
}

nlohmann::ordered_json spec_to_json(const RunSpec& spec) {
  nlohmann::ordered_json j;
  j["command"] = spec.command;
  j["n"] = range_json(spec.n);
  j["l"] = range_json(spec.l);
  j["gamma"] = spec.gamma.empty() ? nlohmann::ordered_json(nullptr) : range_json(spec.gamma);
  j["g"] = round_12(spec.g);
  j["t"] = spec.t ? nlohmann::ordered_json(round_12(*spec.t)) : nlohmann::ordered_json(nullptr);
  j["t_end"] = spec.t_end ? nlohmann::ordered_json(round_12(*spec.t_end)) : nlohmann::ordered_json(nullptr);
  j["stride"] = round_12(spec.stride);
  j["eps"] = range_json(spec.eps);
  j["origin"] = spec.origin;
  j["engine"] = spec.engine;
  j["model"] = spec.model;
  j["grid_points"] = spec.grid_points;
  j["tv"] = spec.tv;
  return j;
}

Table cmd_spectrum(const RunSpec& spec) {
  const RegularNetwork net(single_int(spec.n, "n"), single_int(spec.l, "l"));
  std::optional<double> gamma;
  if (!spec.gamma.empty()) {
    gamma = single(spec.gamma, "gamma");
    if (!(*gamma > 0.0)) throw ParameterError("gamma must be positive");
  }
  const Spectrum sp = spectrum(net);
  Table t;
  t.columns = {"n", "theta", "lambda", "s", "gamma3"};
  for (int k = 0; k < net.nodes(); ++k) {
    const std::size_t i = static_cast<std::size_t>(k);
    Cell g3 = std::monostate{};
    if (gamma) g3 = sp.sine_sums[i] / (2.0 * *gamma);
    t.rows.push_back({static_cast<long long>(k), sp.thetas[i], sp.laplacian_rates[i],
                      sp.sine_sums[i], g3});
  }
  return t;
}

Table cmd_evolve(const RunSpec& spec) {
  check_common(spec);
  const RegularNetwork net(single_int(spec.n, "n"), single_int(spec.l, "l"));
  const int n = net.nodes();
  if (spec.origin < 0 || spec.origin >= n) throw ParameterError("origin out of range");
  if (spec.t && spec.t_end) throw ParameterError("give either --t or --t-end, not both");
  if (!spec.t && !spec.t_end) throw ParameterError("--t or --t-end is required");
  const double t_end = spec.t ? *spec.t : *spec.t_end;
  if (!(t_end >= 0.0)) throw ParameterError("time must be non-negative");
  if (spec.stride < 0.0) throw ParameterError("stride must be non-negative");
  const double gamma = spec.gamma.empty() ? 0.0 : single(spec.gamma, "gamma");
  if (!(gamma >= 0.0)) throw ParameterError("gamma must be non-negative");
  check_engine_size(spec, n);

  // Output times: only t for --t, otherwise 0, every stride, and t_end.
  std::vector<double> times;
  if (spec.t) {
    times.push_back(t_end);
  } else {
    times.push_back(0.0);
    if (spec.stride > 0.0) {
      for (long i = 1;; ++i) {
        const double s = spec.stride * static_cast<double>(i);
        if (s >= t_end * (1.0 - 1e-12)) break;
        times.push_back(s);
      }
    }
    if (t_end > 0.0) times.push_back(t_end);
  }

  Table table;
  table.columns = {"t", "node", "p"};
  auto emit = [&](double t, const ProbabilityDist& d) {
    check_normalized(d, t);
    for (int j = 0; j < n; ++j)
      table.rows.push_back({t, static_cast<long long>(j), d.values[static_cast<std::size_t>(j)]});
  };

  if (parse_engine(spec.engine) == MixingEngine::master_eq) {
    if (spec.model != "auto" && spec.model != "master_eq")
      throw ParameterError("--model applies to the closed_form engine only");
    const MasterEquation eq(net, gamma, spec.g);
    DensityMatrix rho = init_density(n, spec.origin);
    double now = 0.0;
    for (double t : times) {
      if (t > now) {
        eq.advance(rho, t - now, 0.01);
        now = t;
      }
      if (std::abs(rho.trace().real() - 1.0) > 1e-8 || rho.hermiticity_defect() > 1e-8)
        throw InvariantError("density matrix lost trace or hermiticity at t=" + format_number(t));
      emit(t, diagonal(rho, spec.origin));
    }
    return table;
  }

  std::string model = spec.model;
  if (model == "auto") model = gamma > 0.0 ? "large_gamma" : "coherent";
  for (double t : times) {
    if (model == "coherent") {
      emit(t, quantum_distribution(net, spec.g, t, spec.origin));
    } else if (model == "classical") {
      emit(t, classical_distribution(net, t, spec.origin));
    } else if (model == "large_gamma") {
      if (!(gamma > 0.0)) throw ParameterError("large_gamma model needs gamma > 0");
      emit(t, approx_distribution(net, gamma, t, spec.origin));
    } else {
      throw ParameterError("unknown model '" + model + "'");
    }
  }
  return table;
}

Table cmd_mixing(const RunSpec& spec) {
  check_common(spec);
  const RegularNetwork net(single_int(spec.n, "n"), single_int(spec.l, "l"));
  check_engine_size(spec, net.nodes());
  if (spec.gamma.empty()) throw ParameterError("--gamma is required");
  const double gamma = single(spec.gamma, "gamma");
  const double eps = single(spec.eps, "eps");
  Table t;
  t.columns = kMixingColumns;
  t.rows.push_back(mixing_row(mixing_report(net, gamma, mixing_options(spec, eps))));
  return t;
}

Table cmd_bounds(const RunSpec& spec) {
  if (spec.gamma.empty()) throw ParameterError("--gamma is required");
  const auto ns = parse_int_range(spec.n);
  const auto ls = parse_int_range(spec.l);
  const auto gammas = parse_range(spec.gamma);
  const auto epss = parse_range(spec.eps);
  if (ns.empty() || ls.empty() || gammas.empty() || epss.empty())
    throw ParameterError("empty parameter grid");
  Table t;
  t.columns = {"n",         "l",         "gamma",     "eps",      "ins_lower_exact",
               "ins_lower_asym", "ins_upper", "ave_lower", "ave_upper", "flags"};
  for (int n : ns)
    for (int l : ls) {
      const RegularNetwork net(n, l);
      for (double gamma : gammas)
        for (double eps : epss) {
          const auto ins = bounds_instantaneous(n, l, gamma, eps);
          const auto ave = bounds_average(n, l, gamma, eps);
          std::vector<std::string> flags;
          if (ins.epsilon_too_large) flags.emplace_back("epsilon_too_large_for_lower_bound");
          if (gamma < kLargeDecoherenceGate) flags.emplace_back("gamma_below_large_decoherence_gate");
          t.rows.push_back({static_cast<long long>(n), static_cast<long long>(l), gamma, eps,
                            opt_cell(ins.lower_exact), opt_cell(ins.lower_asym), ins.upper,
                            ave.lower, ave.upper, join_flags(flags)});
        }
    }
  return t;
}

Table cmd_sweep(const RunSpec& spec) {
  check_common(spec);
  if (spec.gamma.empty()) throw ParameterError("--gamma is required");
  const auto ns = parse_int_range(spec.n);
  const auto ls = parse_int_range(spec.l);
  const auto gammas = parse_range(spec.gamma);
  const auto epss = parse_range(spec.eps);

  struct Point {
    int n, l;
    double gamma, eps;
  };
  std::vector<Point> grid;
  for (int n : ns)
    for (int l : ls)
      for (double gamma : gammas)
        for (double eps : epss) grid.push_back({n, l, gamma, eps});
  if (grid.empty()) throw ParameterError("empty parameter grid");

  // Validate everything up front so a bad point fails before any heavy work.
  for (const auto& p : grid) {
    RegularNetwork(p.n, p.l);
    check_engine_size(spec, p.n);
    mixing_options(spec, p.eps);
  }

  std::vector<std::vector<Cell>> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  const long count = static_cast<long>(grid.size());
#ifdef QWALK_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (long i = 0; i < count; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const Point& p = grid[idx];
    try {
      const RegularNetwork net(p.n, p.l);
      rows[idx] = mixing_row(mixing_report(net, p.gamma, mixing_options(spec, p.eps)));
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Table t;
  t.columns = kMixingColumns;
  t.rows = std::move(rows);
  return t;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dephased quantum walks on circulant ring networks"};
  app.require_subcommand(1, 1);
  RunSpec spec;

  auto add_common = [&spec](CLI::App* sub, bool ranges) {
    const char* suffix = ranges ? " (value, list a,b,c or range a:b:xF / a:b:+S)" : "";
    sub->add_option("--n", spec.n, std::string("number of nodes") + suffix)->required();
    sub->add_option("--l", spec.l, std::string("coupling range") + suffix)->capture_default_str();
    sub->add_option("--gamma", spec.gamma, std::string("dephasing rate") + suffix);
    sub->add_option("--format", spec.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", spec.out, "output file (default stdout)");
  };
  auto add_mixing = [&spec](CLI::App* sub, bool ranges) {
    const char* suffix = ranges ? " (value, list or range)" : "";
    sub->add_option("--eps", spec.eps, std::string("mixing threshold") + suffix)
        ->capture_default_str();
  };
  auto add_engine = [&spec](CLI::App* sub) {
    sub->add_option("--engine", spec.engine, "closed_form or master_eq")->capture_default_str();
    sub->add_option("--g", spec.g, "hopping amplitude")->capture_default_str();
    sub->add_option("--origin", spec.origin, "starting node")->capture_default_str();
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Laplacian spectrum and decay rates");
  add_common(spectrum_cmd, false);

  auto* evolve_cmd = app.add_subcommand("evolve", "Node distribution over time");
  add_common(evolve_cmd, false);
  add_engine(evolve_cmd);
  evolve_cmd->add_option("--t", spec.t, "single output time");
  evolve_cmd->add_option("--t-end", spec.t_end, "final time of a sampled series");
  evolve_cmd->add_option("--stride", spec.stride, "sampling interval for --t-end");
  evolve_cmd->add_option("--model", spec.model,
                         "closed_form model: auto, coherent, classical, large_gamma")
      ->capture_default_str();

  auto* mixing_cmd = app.add_subcommand("mixing", "Measured mixing times and bounds");
  add_common(mixing_cmd, false);
  add_mixing(mixing_cmd, false);
  add_engine(mixing_cmd);

  auto* bounds_cmd = app.add_subcommand("bounds", "Analytic mixing-time bounds");
  add_common(bounds_cmd, true);
  add_mixing(bounds_cmd, true);

  auto* sweep_cmd = app.add_subcommand("sweep", "Mixing report over a parameter grid");
  add_common(sweep_cmd, true);
  add_mixing(sweep_cmd, true);
  add_engine(sweep_cmd);

  for (auto* sub : {mixing_cmd, sweep_cmd}) {
    sub->add_option("--grid-points", spec.grid_points, "coarse scan intervals")
        ->capture_default_str();
    sub->add_option("--tv", spec.tv, "unhalved or halved")->capture_default_str();
    sub->add_flag("--skip-average", spec.skip_average, "do not measure the average mixing time");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParameters;
  }

  try {
    Table table;
    if (spectrum_cmd->parsed()) {
      spec.command = "spectrum";
      table = cmd_spectrum(spec);
    } else if (evolve_cmd->parsed()) {
      spec.command = "evolve";
      table = cmd_evolve(spec);
    } else if (mixing_cmd->parsed()) {
      spec.command = "mixing";
      table = cmd_mixing(spec);
    } else if (bounds_cmd->parsed()) {
      spec.command = "bounds";
      table = cmd_bounds(spec);
    } else {
      spec.command = "sweep";
      table = cmd_sweep(spec);
    }

    std::ostringstream buf;
    if (spec.format == "json") {
      nlohmann::ordered_json doc;
      doc["spec"] = spec_to_json(spec);
      doc["results"] = to_json(table);
      buf << doc.dump(2) << '\n';
    } else {
      write_csv(table, buf);
    }
    if (spec.out.empty()) {
      out << buf.str();
    } else {
      std::ofstream file(spec.out, std::ios::binary);
      if (!file) throw ParameterError("cannot open output file '" + spec.out + "'");
      file << buf.str();
    }
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace qwalk::cli
