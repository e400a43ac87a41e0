#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/abelian.hpp"
#include "core/counting.hpp"
#include "core/cyclo.hpp"
#include "core/dirichlet.hpp"
#include "core/fideals.hpp"
#include "engine/config.hpp"

namespace tame::engine {

// One finished report: ordered preamble pairs, a column header, and string
// cells.  The same structure renders to CSV (preamble as # comments) and to
// JSON (preamble as an array of pairs), so the two formats carry identical
// data byte for byte apart from syntax.
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> preamble;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(const std::string& key, const std::string& value) {
    preamble.emplace_back(key, value);
  }
};

std::string render_csv(const Report& r);
std::string render_json(const Report& r);

// Canonical number rendering used in every cell: integers verbatim, floats
// through %.15g so equal runs print equal bytes.
std::string cell(long long v);
std::string cell(unsigned long long v);
std::string cell(double v);

// A configured experiment.  Owns the group, orbit table, weight and ray class
// system outright; reports borrow nothing from the config text.  Construction
// validates the configuration and raises Errc::invalid_argument on conflicts.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig cfg);

  // command is one of: orbits, enumerate, count, predict, verify, verdict,
  // stickelberger, check-bounds
  Report run(const std::string& command) const;

  std::string render(const Report& r) const;

  const ExperimentConfig& config() const { return cfg_; }
  const abelian::FiniteAbelianGroup& group() const { return group_; }
  const abelian::OrbitTable& orbits() const { return orbits_; }
  const fideals::Weight& weight() const { return weight_; }
  const cyclo::RayClassSystem& system() const { return sys_; }

 private:
  Report orbits_report() const;
  Report enumerate_report() const;
  Report count_report() const;
  Report predict_report() const;
  Report verify_report() const;
  Report verdict_report() const;
  Report stickelberger_report() const;
  Report check_bounds_report() const;

  void base_preamble(Report& r) const;
  std::string element_str(long long index) const;
  // appends beta/delta/tau lines and fills out, or records the failure
  // reason and reports false
  bool prediction_preamble(Report& r, const dirichlet::Evaluator& ev,
                           dirichlet::AsymptoticPrediction& out) const;
  void tally_rows(Report& r, const counting::ClassTally& tally, unsigned long long X,
                  double total_pred) const;

  ExperimentConfig cfg_;
  abelian::FiniteAbelianGroup group_;
  abelian::OrbitTable orbits_;
  fideals::Weight weight_;
  cyclo::RayClassSystem sys_;
  std::vector<std::string> warnings_;
};

}  // namespace tame::engine
