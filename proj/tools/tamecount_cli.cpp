#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tamecount.h"

namespace {

struct Opts {
  std::string group;
  std::string weight;
  std::string modulus;
  bool override_modulus = false;
  std::string bound;
  std::string schedule;
  std::string fibers;
  std::string kpsi;
  std::string kf;
  bool equal_size = false;
  std::string format;
  std::string p_max;
  std::string premise_p_max;
  std::string threshold;
  std::string threads;
  std::string alpha;
  std::string grid_p_max;
  std::string grid_s;
  bool timing = false;
  std::string config_file;
  std::string output;
};

void add_common(CLI::App* cmd, Opts& o) {
  cmd->add_option("--group", o.group, "invariant factors, e.g. 2,2");
  cmd->add_option("--weight", o.weight, "disc, ram, or a comma list per component");
  cmd->add_option("--modulus", o.modulus, "coprimality modulus (default lcm(|G|, exp(G)^2))");
  cmd->add_flag("--override-modulus", o.override_modulus,
                "accept a modulus that is not a multiple of the default");
  cmd->add_option("--X", o.bound, "index bound for enumerate and count");
  cmd->add_option("--schedule", o.schedule, "verify bounds, e.g. 1000,10000,100000");
  cmd->add_option("--fibers", o.fibers, "fiber partition file (label: class,class,...)");
  cmd->add_option("--kpsi", o.kpsi, "kernel constant multiplying fiber sums");
  cmd->add_option("--kf", o.kf, "expected fiber size");
  cmd->add_flag("--equal-size", o.equal_size, "require every fiber to have size kf");
  cmd->add_option("--format", o.format, "csv or json");
  cmd->add_option("--p-max", o.p_max, "Euler product cutoff for predictions");
  cmd->add_option("--premise-p-max", o.premise_p_max, "prime scan cutoff for verdict witnesses");
  cmd->add_option("--threshold", o.threshold, "fixed witness threshold (0 = automatic)");
  cmd->add_option("--threads", o.threads, "worker threads for counting");
  cmd->add_option("--alpha", o.alpha, "dual element coefficients for stickelberger");
  cmd->add_option("--grid-p-max", o.grid_p_max, "largest prime in check-bounds grid");
  cmd->add_option("--grid-s", o.grid_s, "real s values in check-bounds grid");
  cmd->add_flag("--timing", o.timing, "append a timing_ms line (breaks byte determinism)");
  cmd->add_option("--config", o.config_file, "key = value file applied before flags");
  cmd->add_option("--output", o.output, "write the report here instead of stdout");
}

void append(std::string& text, const char* key, const std::string& value) {
  if (!value.empty()) text += std::string(key) + " = " + value + "\n";
}

int fail_with(tc_engine* engine, tc_status rc) {
  std::fprintf(stderr, "tamecount: %s\n", tc_last_error(engine));
  tc_engine_free(engine);
  return rc == TC_EINTERNAL ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tame Galois module counting"};
  app.require_subcommand(1);
  Opts o;

  const std::vector<std::pair<const char*, const char*>> commands = {
      {"orbits", "orbit table of the configured group"},
      {"enumerate", "list every ideal in F up to X"},
      {"count", "per-class counts up to X with predictions"},
      {"predict", "pole data and leading constant of the counting series"},
      {"verify", "counts against predictions over a schedule of bounds"},
      {"verdict", "equidistribution verdict with numerical witnesses"},
      {"stickelberger", "pairing table, or theta of a dual element"},
      {"check-bounds", "comparison bound on a prime/s grid"},
  };
  for (const auto& [name, desc] : commands) add_common(app.add_subcommand(name, desc), o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  std::string text;
  if (!o.config_file.empty()) {
    std::ifstream in(o.config_file);
    if (!in) {
      std::fprintf(stderr, "tamecount: cannot open config file: %s\n", o.config_file.c_str());
      return 1;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    text += "\n";
  }
  if (o.threads.empty())
    if (const char* env = std::getenv("TAMECOUNT_THREADS")) append(text, "threads", env);
  append(text, "group", o.group);
  append(text, "weight", o.weight);
  append(text, "modulus", o.modulus);
  if (o.override_modulus) text += "override_modulus = true\n";
  append(text, "X", o.bound);
  append(text, "schedule", o.schedule);
  append(text, "fibers", o.fibers);
  append(text, "kpsi", o.kpsi);
  append(text, "kf", o.kf);
  if (o.equal_size) text += "equal_size = true\n";
  append(text, "format", o.format);
  append(text, "p_max", o.p_max);
  append(text, "premise_p_max", o.premise_p_max);
  append(text, "threshold", o.threshold);
  append(text, "threads", o.threads);
  append(text, "alpha", o.alpha);
  append(text, "grid_p_max", o.grid_p_max);
  append(text, "grid_s", o.grid_s);
  if (o.timing) text += "timing = true\n";

  tc_engine* engine = tc_engine_new();
  if (!engine) {
    std::fprintf(stderr, "tamecount: out of memory\n");
    return 2;
  }

  tc_status rc = tc_configure(engine, text.c_str());
  if (rc != TC_OK) return fail_with(engine, rc);

  const std::string command = app.get_subcommands().front()->get_name();
  rc = tc_run(engine, command.c_str());
  if (rc != TC_OK) return fail_with(engine, rc);

  const char* report = tc_report(engine);
  if (o.output.empty()) {
    std::fputs(report, stdout);
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
      std::fprintf(stderr, "tamecount: cannot write output file: %s\n", o.output.c_str());
      tc_engine_free(engine);
      return 1;
    }
    out << report;
  }
  tc_engine_free(engine);
  return 0;
}
