#pragma once

#include <string>
#include <vector>

namespace tame::engine {

// Settings for one experiment, filled from key = value text.  Unset numeric
// fields keep their zero defaults; resolution against the group happens when
// the experiment is built, not here.
struct ExperimentConfig {
  std::vector<long long> group;          // invariant factor presentation
  std::string weight = "disc";           // disc, ram, or comma list
  long long modulus = 0;                 // 0 = lcm(|G|, exp(G)^2)
  bool override_modulus = false;
  unsigned long long bound = 0;          // X for enumerate / count
  std::vector<unsigned long long> schedule;  // verify bounds, default decades 1e3..1e7
  std::string fibers_file;
  long long kpsi = 1;
  long long kf = 1;
  bool equal_size = false;
  std::string format = "csv";
  unsigned long long p_max = 100000;
  unsigned long long premise_p_max = 10000;
  double threshold = 0.0;
  int threads = 1;
  std::vector<long long> alpha;          // dual element coefficients
  unsigned long long grid_p_max = 1000;
  std::vector<double> grid_s = {0.6, 0.8, 1.0, 1.5, 2.0};
  bool timing = false;
};

// Applies key = value lines to cfg in order, later lines winning.  Blank
// lines and lines starting with # are skipped.  Unknown keys and malformed
// values raise Errc::invalid_argument.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);

}  // namespace tame::engine
