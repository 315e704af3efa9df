#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "modelrisk/basel.hpp"
#include "modelrisk/bounds.hpp"
#include "modelrisk/dist.hpp"
#include "modelrisk/modelrisk.hpp"
#include "modelrisk/oracle.hpp"
#include "modelrisk/riskmeasure.hpp"

namespace mrisk::cli {

namespace {

using json = nlohmann::json;

struct HelpRequested {
  std::string text;
};

const std::map<std::string, Command> kCommands{
    {"curves", Command::Curves},          {"moment-class", Command::MomentClass},
    {"local", Command::Local},            {"mixture-sweep", Command::MixtureSweep},
    {"oracle-check", Command::OracleCheck}, {"basel", Command::Basel},
};

struct Reference {
  std::string label;
  Distribution law;
};

std::vector<Reference> references(const RunConfig& c) {
  std::vector<Reference> refs;
  if (c.reference == "normal" || c.reference == "both") {
    refs.push_back({"normal", Distribution::standard_normal()});
  }
  if (c.reference == "student-t" || c.reference == "both") {
    refs.push_back({"t" + format_number(c.nu), Distribution::student_t(c.nu, true)});
  }
  return refs;
}

std::vector<MeasureKind> measures(const RunConfig& c) {
  std::vector<MeasureKind> out;
  if (c.measure == "var" || c.measure == "both") out.push_back(MeasureKind::VaR);
  if (c.measure == "es" || c.measure == "both") out.push_back(MeasureKind::ES);
  return out;
}

std::string underscored(std::string_view s) {
  std::string out(s);
  std::replace(out.begin(), out.end(), '-', '_');
  return out;
}

/// Evaluates row(i) for every i, possibly on several threads; rows stay in index order.
std::vector<std::vector<double>> evaluate_rows(std::size_t n,
                                               const std::function<std::vector<double>(std::size_t)>& row) {
  std::vector<std::vector<double>> rows(n);
  std::vector<std::exception_ptr> errors(n);
  const unsigned workers = std::max(1u, std::min<unsigned>(thread_cap(), static_cast<unsigned>(n)));
  const auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        rows[i] = row(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

Table curves(const RunConfig& c, const std::vector<double>& alphas) {
  std::vector<BoundKind> kinds;
  if (c.kind == "all") {
    kinds = {BoundKind::ChebyshevVaR, BoundKind::CantelliVaR, BoundKind::SharpVaR,
             BoundKind::ChebyshevES,  BoundKind::CantelliES,  BoundKind::SharpES};
  } else {
    kinds = {parse_bound_kind(c.kind)};
  }
  Table t;
  t.header.push_back("alpha");
  for (auto k : kinds) t.header.push_back(underscored(to_string(k)));
  const bool literal =
      c.paper_literal && std::find(kinds.begin(), kinds.end(), BoundKind::CantelliES) != kinds.end();
  if (literal) t.header.push_back("cantelli_es_printed");
  t.rows = evaluate_rows(alphas.size(), [&](std::size_t i) {
    const double a = alphas[i];
    std::vector<double> row{a};
    for (auto k : kinds) row.push_back(multiplier_ratio(k, a));
    if (literal) row.push_back(cantelli_es_printed(1.0, a) / (normal::pdf(normal::quantile(a)) / a));
    return row;
  });
  return t;
}

Table moment_class(const RunConfig& c, const std::vector<double>& alphas) {
  const auto refs = references(c);
  const auto ms = measures(c);
  Table t;
  t.header.push_back("alpha");
  for (auto m : ms) {
    for (const auto& r : refs) {
      const std::string suffix = std::string(m == MeasureKind::VaR ? "var_" : "es_") + r.label;
      t.header.push_back("am_" + suffix);
      t.header.push_back("rm_" + suffix);
    }
  }
  t.rows = evaluate_rows(alphas.size(), [&](std::size_t i) {
    std::vector<double> row{alphas[i]};
    for (auto m : ms) {
      for (const auto& r : refs) {
        const auto rep = moment_class_report(m, r.law, alphas[i]);
        row.push_back(rep.AM);
        row.push_back(rep.RM);
      }
    }
    return row;
  });
  return t;
}

Table local(const RunConfig& c, const std::vector<double>& alphas) {
  const auto refs = references(c);
  const FamilyKind fam = parse_family_kind(c.family);
  Table t;
  t.header.push_back("alpha");
  for (const auto& r : refs) t.header.push_back("lm_" + r.label);
  t.rows = evaluate_rows(alphas.size(), [&](std::size_t i) {
    std::vector<double> row{alphas[i]};
    for (const auto& r : refs) row.push_back(local_measure(fam, r.law, alphas[i]));
    return row;
  });
  return t;
}

Table mixture_sweep(const RunConfig& c, const std::vector<double>& alphas) {
  const auto refs = references(c);
  const FamilyKind fam = parse_family_kind(c.family);
  Table t;
  t.header.push_back("alpha");
  for (const auto& r : refs) {
    for (double eps : c.radii) t.header.push_back("rm_eps_" + format_number(eps) + "_" + r.label);
    t.header.push_back("lm_" + r.label);
  }
  t.rows = evaluate_rows(alphas.size(), [&](std::size_t i) {
    const double a = alphas[i];
    std::vector<double> row{a};
    for (const auto& r : refs) {
      for (double eps : c.radii) {
        // Radii outside the family's admissible range leave the cell undefined.
        try {
          const double sweep = local_measure_sweep(fam, r.law, a, std::span(&eps, 1)).front().rm;
          row.push_back(sweep);
        } catch (const RadiusTooLarge&) {
          row.push_back(std::nan(""));
        }
      }
      row.push_back(local_measure(fam, r.law, a));
    }
    return row;
  });
  return t;
}

Table oracle_check(const RunConfig& c, const std::vector<double>& alphas) {
  oracle::SearchConstraints sc;
  sc.p_grid = c.p_grid;
  sc.validate();
  Table t;
  t.header = {"alpha",        "inf_q_closed",  "inf_q_oracle",  "sup_q_closed",
              "sup_q_oracle", "sup_es_closed", "sup_es_oracle", "inf_es_oracle"};
  t.rows = evaluate_rows(alphas.size(), [&](std::size_t i) {
    const double a = alphas[i];
    const auto v = oracle::search_extremal_var(a, sc);
    const auto e = oracle::search_extremal_es(a, sc);
    return std::vector<double>{a,     -std::sqrt((1.0 - a) / a), v.inf, std::sqrt(a / (1.0 - a)),
                               v.sup, std::sqrt((1.0 - a) / a),  e.sup, e.inf};
  });
  return t;
}

Table basel_charge(const RunConfig& c) {
  const auto input = basel::ingest_history(c.history, c.lambda);
  return Table{{"capital_charge"}, {{basel::capital_charge(input)}}};
}

void apply_json(RunConfig& c, const json& j) {
  for (const auto& [key, value] : j.items()) {
    if (key == "command") {
      const auto it = kCommands.find(value.get<std::string>());
      if (it == kCommands.end()) throw ConfigError("unknown command in config");
      c.command = it->second;
    } else if (key == "alpha") {
      c.alpha = value.get<double>();
    } else if (key == "alpha_min") {
      c.alpha_min = value.get<double>();
    } else if (key == "alpha_max") {
      c.alpha_max = value.get<double>();
    } else if (key == "alpha_steps") {
      c.alpha_steps = value.get<int>();
    } else if (key == "ref") {
      c.reference = value.get<std::string>();
    } else if (key == "nu") {
      c.nu = value.get<double>();
    } else if (key == "measure") {
      c.measure = value.get<std::string>();
    } else if (key == "kind") {
      c.kind = value.get<std::string>();
    } else if (key == "family") {
      c.family = value.get<std::string>();
    } else if (key == "eps") {
      c.radii = value.get<std::vector<double>>();
    } else if (key == "grid") {
      c.p_grid = value.get<std::size_t>();
    } else if (key == "history") {
      c.history = value.get<std::string>();
    } else if (key == "lambda") {
      c.lambda = value.get<double>();
    } else if (key == "output") {
      c.output = value.get<std::string>();
    } else if (key == "paper_literal") {
      c.paper_literal = value.get<bool>();
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

}  // namespace

std::vector<double> RunConfig::alphas() const {
  if (alpha) return {*alpha};
  std::vector<double> grid(static_cast<std::size_t>(alpha_steps));
  for (int i = 0; i < alpha_steps; ++i) {
    grid[static_cast<std::size_t>(i)] =
        alpha_min + (alpha_max - alpha_min) * static_cast<double>(i) / (alpha_steps - 1);
  }
  return grid;
}

void RunConfig::validate() const {
  if (command == Command::Basel) {
    if (history.empty()) throw ConfigError("basel needs --history");
    return;
  }
  if (alpha) {
    if (!(*alpha > 0.0 && *alpha < 1.0)) throw ConfigError("--alpha must lie in (0,1)");
  } else {
    if (alpha_steps < 2) throw ConfigError("--alpha-steps must be >= 2");
    if (!(alpha_min > 0.0 && alpha_min < alpha_max && alpha_max < 1.0)) {
      throw ConfigError("need 0 < alpha-min < alpha-max < 1");
    }
  }
  if (command == Command::Curves) {
    const double top = alpha ? *alpha : alpha_max;
    if (!(top < 0.5)) throw ConfigError("ratio curves need alpha < 0.5");
  }
  if (reference != "normal" && reference != "student-t" && reference != "both") {
    throw ConfigError("--ref must be normal, student-t or both");
  }
  if (measure != "var" && measure != "es" && measure != "both") {
    throw ConfigError("--measure must be var, es or both");
  }
  if (!(nu > 2.0)) throw ConfigError("--nu must be > 2");
  if (radii.empty()) throw ConfigError("--eps needs at least one radius");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

std::string to_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

Table run_command(const RunConfig& config) {
  config.validate();
  const auto alphas = config.alphas();
  switch (config.command) {
    case Command::Curves:
      return curves(config, alphas);
    case Command::MomentClass:
      return moment_class(config, alphas);
    case Command::Local:
      return local(config, alphas);
    case Command::MixtureSweep:
      return mixture_sweep(config, alphas);
    case Command::OracleCheck:
      return oracle_check(config, alphas);
    case Command::Basel:
      return basel_charge(config);
  }
  throw ConfigError("unknown command");
}

RunConfig parse_args(int argc, const char* const* argv) {
  CLI::App app{"Model risk of VaR and ES: bounds, extremal laws and model-risk measures"};
  app.require_subcommand(1);

  std::string config_path;
  double alpha = 0, alpha_min = 0, alpha_max = 0, nu = 0, lambda = 0;
  int steps = 0;
  std::size_t grid = 0;
  std::string ref, measure, kind, family, output, history;
  std::vector<double> eps;
  bool literal = false;

  std::map<std::string, CLI::App*> subs;
  std::map<std::string, CLI::Option*> opts;
  const auto add = [&](CLI::App* sub, const std::string& name, auto& target, const std::string& help) {
    auto* o = sub->add_option(name, target, help);
    opts[sub->get_name() + name] = o;
    return o;
  };
  for (const auto& [name, cmd] : kCommands) {
    auto* sub = app.add_subcommand(name);
    subs[name] = sub;
    add(sub, "--config", config_path, "JSON file with the same keys as the flags")
        ->check(CLI::ExistingFile);
    add(sub, "-o,--output", output, "CSV output path (default stdout)");
    if (cmd == Command::Basel) {
      add(sub, "--history", history, "CSV file with header day,var");
      add(sub, "--lambda", lambda, "multiplier in [3,4]");
      continue;
    }
    add(sub, "--alpha", alpha, "single level instead of a grid");
    add(sub, "--alpha-min", alpha_min, "grid start");
    add(sub, "--alpha-max", alpha_max, "grid end");
    add(sub, "--alpha-steps", steps, "grid points");
    add(sub, "--ref", ref, "normal | student-t | both");
    add(sub, "--nu", nu, "Student-t degrees of freedom");
    if (cmd == Command::Curves) {
      add(sub, "--kind", kind, "chebyshev-var | chebyshev-es | cantelli-var | cantelli-es | sharp-var | sharp-es | all");
      opts[name + "--paper-literal"] =
          sub->add_flag("--paper-literal", literal, "add the Cantelli ES ratio with the printed antiderivative");
    }
    if (cmd == Command::MomentClass) add(sub, "--measure", measure, "var | es | both");
    if (cmd == Command::Local || cmd == Command::MixtureSweep) {
      add(sub, "--family", family, "kolmogorov | levy | mixture");
    }
    if (cmd == Command::MixtureSweep) add(sub, "--eps", eps, "radii")->delimiter(',');
    if (cmd == Command::OracleCheck) add(sub, "--grid", grid, "two-point mass grid size");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) target = sub;
    }
    throw HelpRequested{target->help()};
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  RunConfig c;
  std::string chosen;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) chosen = name;
  }
  c.command = kCommands.at(chosen);
  const auto given = [&](const std::string& name) {
    const auto it = opts.find(chosen + name);
    return it != opts.end() && it->second->count() > 0;
  };

  if (given("--config")) {
    std::ifstream in(config_path);
    try {
      apply_json(c, json::parse(in));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
    c.command = kCommands.at(chosen);
  }
  if (given("-o,--output")) c.output = output;
  if (given("--history")) c.history = history;
  if (given("--lambda")) c.lambda = lambda;
  if (given("--alpha")) c.alpha = alpha;
  if (given("--alpha-min")) c.alpha_min = alpha_min;
  if (given("--alpha-max")) c.alpha_max = alpha_max;
  if (given("--alpha-steps")) c.alpha_steps = steps;
  if (given("--ref")) c.reference = ref;
  if (given("--nu")) c.nu = nu;
  if (given("--kind")) c.kind = kind;
  if (given("--paper-literal")) c.paper_literal = literal;
  if (given("--measure")) c.measure = measure;
  if (given("--family")) c.family = family;
  if (given("--eps")) c.radii = eps;
  if (given("--grid")) c.p_grid = grid;
  return c;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw ConfigError("failed writing " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("MODELRISK_THREADS")) {
    unsigned v = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) cap = v;
  }
  return cap;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_args(argc, argv);
    const std::string csv = to_csv(run_command(config));
    if (config.output) {
      write_atomic(*config.output, csv);
    } else {
      out << csv;
    }
    return 0;
  } catch (const HelpRequested& h) {
    out << h.text;
    return 0;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace mrisk::cli
