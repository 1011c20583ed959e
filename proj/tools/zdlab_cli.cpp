// zdlab: classify weighted composition operators, build annihilator witnesses,
// and run TDZ demonstrations from the command line or from scenario files.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zdlab/report.hpp"

namespace {

struct Globals {
  std::optional<unsigned> n_max;
  std::string tol;
  std::string format = "table";
  std::string out;
  bool timing = false;
};

struct Inline {
  std::string u = "const(1)";
  std::string phi = "shift(0)";
  std::string y;
  std::string p = "2";
  std::string side;
  std::string rule;
  std::size_t dim = 0;
  std::vector<std::string> probes;
  std::vector<std::size_t> windows;
};

// Inline symbols are spliced into a one-task scenario so that the CLI and the
// scenario runner share a single parser.
std::string scenario_text(const std::string& id, const Inline& in, const std::string& task) {
  std::ostringstream os;
  os << "id: " << id << "\n";
  os << "space: {kind: lp, p: \"" << in.p << "\"}\n";
  os << "symbols:\n";
  if (!in.y.empty()) {
    os << "  y: " << in.y << "\n";
  } else {
    os << "  u: " << in.u << "\n";
    os << "  phi: " << in.phi << "\n";
  }
  os << "tasks:\n  - kind: " << task << "\n";
  if (!in.side.empty()) os << "    side: " << in.side << "\n";
  if (!in.rule.empty()) os << "    rule: " << in.rule << "\n";
  if (in.dim) os << "    N: " << in.dim << "\n";
  if (!in.probes.empty()) {
    os << "    probes: [";
    for (std::size_t i = 0; i < in.probes.size(); ++i) os << (i ? ", " : "") << in.probes[i];
    os << "]\n";
  }
  if (!in.windows.empty()) {
    os << "    windows: [";
    for (std::size_t i = 0; i < in.windows.size(); ++i) os << (i ? ", " : "") << in.windows[i];
    os << "]\n";
  }
  return os.str();
}

int emit(const zdlab::Report& report, const Globals& g) {
  const auto format = zdlab::parse_report_format(g.format);
  if (format == zdlab::ReportFormat::Csv && !g.out.empty()) {
    std::filesystem::create_directories(g.out);
    for (const auto& [name, text] : zdlab::csv_files(report)) {
      std::ofstream(std::filesystem::path(g.out) / name) << text;
    }
  } else if (!g.out.empty()) {
    std::ofstream(g.out) << zdlab::emit_report(report, format);
  } else {
    std::cout << zdlab::emit_report(report, format);
  }
  return report.all_ok() ? 0 : 1;
}

int execute(const zdlab::Scenario& s, const Globals& g) {
  zdlab::RunOptions opts;
  opts.timing = g.timing;
  opts.n_max = g.n_max;
  if (!g.tol.empty()) opts.tol = zdlab::parse_rational(g.tol);
  return emit(zdlab::run(s, opts), g);
}

void add_operator_flags(CLI::App* cmd, Inline& in) {
  cmd->add_option("--u", in.u, "weight: shorthand like inv(1) or a YAML map with exceptions/tail_start/tail")
      ->capture_default_str();
  cmd->add_option("--phi", in.phi, "self-map: shorthand like block(2) or a YAML map")->capture_default_str();
  cmd->add_option("--p", in.p, "exponent of l^p (number or inf)")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zero-divisor laboratory for weighted composition operators"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--n-max", g.n_max, "largest n in convergence tables");
  app.add_option("--tol", g.tol, "zero tolerance for grid functions, as p/q");
  app.add_option("--format", g.format, "table, csv or structured")
      ->check(CLI::IsMember({"table", "csv", "structured"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "output file (directory for csv)");
  app.add_flag("--timing", g.timing, "record wall-clock time per task");

  Inline in;
  std::string file;

  auto* run = app.add_subcommand("run", "run a scenario file");
  run->add_option("file", file, "scenario file")->required()->check(CLI::ExistingFile);

  auto* classify = app.add_subcommand("classify", "left, right or two-sided zero-divisor verdict");
  add_operator_flags(classify, in);
  classify->add_option("--side", in.side, "left, right or zd")->check(CLI::IsMember({"left", "right", "zd"}));

  auto* witness = app.add_subcommand("witness", "synthesize and verify an annihilator");
  add_operator_flags(witness, in);
  witness->add_option("--side", in.side, "left or right")->check(CLI::IsMember({"left", "right"}));

  auto* tdz = app.add_subcommand("tdz", "strongly-TDZ or diagonal TDZ convergence table");
  add_operator_flags(tdz, in);
  tdz->add_option("--y", in.y, "c0 sequence for the diagonal demo, e.g. inv(1) or geom(1,1/2)");
  tdz->add_option("--rule", in.rule, "tail_projection, single_hole or diagonal_tail");
  tdz->add_option("--N", in.dim, "truncation size (default n_max + 1)");
  tdz->add_option("--probes", in.probes, "e<k>, harmonic, geometric");

  auto* norm = app.add_subcommand("norm", "operator norm of a truncation");
  add_operator_flags(norm, in);
  norm->add_option("--N", in.dim, "truncation size")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "verdicts, witnesses and oracle cross-checks");
  add_operator_flags(verify, in);
  verify->add_option("--windows", in.windows, "oracle truncation sizes (default 8 12)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return execute(zdlab::load_scenario(file), g);

    std::string task;
    std::string id;
    if (*classify) {
      task = in.side == "left" ? "classify_left" : in.side == "right" ? "classify_right" : "classify_zd";
      in.side.clear();
      id = "cli-classify";
    } else if (*witness) {
      task = "witness";
      id = "cli-witness";
    } else if (*tdz) {
      task = "tdz_demo";
      id = "cli-tdz";
      if (g.n_max && in.dim == 0) in.dim = *g.n_max + 1;
    } else if (*norm) {
      task = "norm";
      id = "cli-norm";
      if (in.dim == 0) in.dim = 8;
    } else {
      task = "verify_all";
      id = "cli-verify";
    }
    return execute(zdlab::parse_scenario(scenario_text(id, in, task)), g);
  } catch (const zdlab::ScenarioError& e) {
    for (const auto& err : e.errors()) {
      std::cerr << "error " << err.code << " at line " << err.line << ": " << err.message << '\n';
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
