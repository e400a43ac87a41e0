#include "engine/experiment.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <utility>

#include "core/errors.hpp"
#include "core/primes.hpp"
#include "json.hpp"

namespace tame::engine {

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string exps_str(const abelian::Exps& e) {
  std::vector<std::string> parts;
  for (long long x : e) parts.push_back(std::to_string(x));
  return join(parts, ".");
}

abelian::FiniteAbelianGroup make_group(const std::vector<long long>& factors) {
  check_arg(!factors.empty(), "group is required (comma list of invariant factors)");
  return abelian::FiniteAbelianGroup(factors);
}

fideals::Weight make_weight(const std::string& spec, const abelian::OrbitTable& orbits) {
  if (spec == "disc") return fideals::weight_disc(orbits);
  if (spec == "ram") return fideals::weight_ram(orbits);
  std::vector<long long> v;
  std::istringstream in(spec);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      v.push_back(std::stoll(part));
    } catch (const std::exception&) {
      fail(Errc::invalid_argument, "weight must be disc, ram, or a comma list of integers");
    }
  }
  return fideals::weight_custom(orbits, std::move(v));
}

long long resolve_modulus(ExperimentConfig& cfg, const abelian::FiniteAbelianGroup& g) {
  long long def = std::lcm(g.order(), g.exponent() * g.exponent());
  if (cfg.modulus == 0) {
    cfg.modulus = def;
  } else if (cfg.modulus % def != 0 && !cfg.override_modulus) {
    fail(Errc::invalid_argument,
         "modulus " + std::to_string(cfg.modulus) + " is not a multiple of the default " +
             std::to_string(def) + "; set override_modulus = true to force it");
  }
  return cfg.modulus;
}

long long system_identity(const cyclo::RayClassSystem& sys, std::size_t components) {
  if (sys.class_blind()) return 0;
  std::vector<long long> ids(components);
  for (std::size_t t = 0; t < components; ++t)
    ids[t] = sys.component_group(t)->identity_class();
  return sys.combine(ids);
}

counting::FiberPartition load_fibers(const std::string& path, const ExperimentConfig& cfg) {
  std::ifstream in(path);
  check_arg(static_cast<bool>(in), "cannot open fibers file: " + path);
  counting::FiberPartition fp;
  fp.kpsi = cfg.kpsi;
  fp.kf = cfg.kf;
  fp.equal_size = cfg.equal_size;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto colon = line.find(':');
    check_arg(colon != std::string::npos, "fiber line needs 'label: class,class,...': " + line);
    std::string label = line.substr(b, colon - b);
    while (!label.empty() && (label.back() == ' ' || label.back() == '\t')) label.pop_back();
    check_arg(!label.empty(), "fiber line has empty label: " + line);
    std::vector<long long> classes;
    std::istringstream rest(line.substr(colon + 1));
    std::string part;
    while (std::getline(rest, part, ',')) {
      try {
        classes.push_back(std::stoll(part));
      } catch (const std::exception&) {
        fail(Errc::invalid_argument, "fiber class list must be integers: " + line);
      }
    }
    fp.labels.push_back(std::move(label));
    fp.classes.push_back(std::move(classes));
  }
  check_arg(!fp.labels.empty(), "fibers file defines no fibers: " + path);
  return fp;
}

}  // namespace

std::string cell(long long v) { return std::to_string(v); }
std::string cell(unsigned long long v) { return std::to_string(v); }

std::string cell(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string render_csv(const Report& r) {
  std::string out = "# command = " + r.command + "\n";
  for (const auto& [k, v] : r.preamble) out += "# " + k + " = " + v + "\n";
  out += join(r.columns, ",");
  out += "\n";
  for (const auto& row : r.rows) {
    out += join(row, ",");
    out += "\n";
  }
  return out;
}

std::string render_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["preamble"] = nlohmann::ordered_json::array();
  for (const auto& [k, v] : r.preamble) j["preamble"].push_back({k, v});
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  return j.dump(2) + "\n";
}

Experiment::Experiment(ExperimentConfig cfg)
    : cfg_(std::move(cfg)),
      group_(make_group(cfg_.group)),
      orbits_(group_),
      weight_(make_weight(cfg_.weight, orbits_)),
      sys_(orbits_, resolve_modulus(cfg_, group_)) {
  long long def = std::lcm(group_.order(), group_.exponent() * group_.exponent());
  if (cfg_.modulus % def != 0)
    warnings_.push_back("modulus " + std::to_string(cfg_.modulus) +
                        " is not a multiple of the default " + std::to_string(def) +
                        "; counts ignore congruence conditions the default would impose");
  if (cfg_.schedule.empty())
    cfg_.schedule = {1000, 10000, 100000, 1000000, 10000000};
}

Report Experiment::run(const std::string& command) const {
  auto t0 = std::chrono::steady_clock::now();
  Report r;
  if (command == "orbits") r = orbits_report();
  else if (command == "enumerate") r = enumerate_report();
  else if (command == "count") r = count_report();
  else if (command == "predict") r = predict_report();
  else if (command == "verify") r = verify_report();
  else if (command == "verdict") r = verdict_report();
  else if (command == "stickelberger") r = stickelberger_report();
  else if (command == "check-bounds") r = check_bounds_report();
  else fail(Errc::invalid_argument, "unknown command: " + command);
  if (cfg_.timing) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    r.add("timing_ms", cell(static_cast<long long>(ms)));
  }
  return r;
}

std::string Experiment::render(const Report& r) const {
  return cfg_.format == "json" ? render_json(r) : render_csv(r);
}

void Experiment::base_preamble(Report& r) const {
  std::vector<std::string> f;
  for (long long x : group_.invariant_factors()) f.push_back(std::to_string(x));
  r.add("group", join(f, ","));
  if (weight_.name() == "custom") {
    std::vector<std::string> w;
    for (std::size_t t = 0; t < orbits_.components(); ++t)
      w.push_back(std::to_string(weight_.at(t)));
    r.add("weight", join(w, ","));
  } else {
    r.add("weight", weight_.name());
  }
  r.add("modulus", cell(cfg_.modulus));
  for (const auto& w : warnings_) r.add("warning", w);
}

std::string Experiment::element_str(long long index) const {
  return exps_str(group_.exps_of(index));
}

bool Experiment::prediction_preamble(Report& r, const dirichlet::Evaluator& ev,
                                     dirichlet::AsymptoticPrediction& out) const {
  try {
    out = ev.predict_total(cfg_.p_max);
    auto est = ev.residue_b(weight_.alpha(), 0, cfg_.p_max);
    r.add("beta", cell(out.beta));
    r.add("delta", cell(out.delta));
    r.add("tau", cell(out.tau));
    r.add("tau_abs_tail", cell(est.abs_tail));
    return true;
  } catch (const Error& e) {
    r.add("prediction_error", e.what());
    return false;
  }
}

void Experiment::tally_rows(Report& r, const counting::ClassTally& tally, unsigned long long X,
                            double total_pred) const {
  long long ncl = sys_.num_classes();
  for (long long c = 0; c < ncl; ++c) {
    double pc = total_pred / static_cast<double>(ncl);
    std::vector<std::string> row{sys_.class_label(c), cell(X),
                                 cell(tally.counts[static_cast<std::size_t>(c)])};
    row.push_back(total_pred > 0 ? cell(pc) : "");
    row.push_back(total_pred > 0
                      ? cell(static_cast<double>(tally.counts[static_cast<std::size_t>(c)]) / pc)
                      : "");
    r.rows.push_back(std::move(row));
  }
  std::vector<std::string> row{"total", cell(X), cell(tally.total)};
  row.push_back(total_pred > 0 ? cell(total_pred) : "");
  row.push_back(total_pred > 0 ? cell(static_cast<double>(tally.total) / total_pred) : "");
  r.rows.push_back(std::move(row));
}

Report Experiment::orbits_report() const {
  Report r;
  r.command = "orbits";
  base_preamble(r);
  r.columns = {"t", "rep", "order", "degree", "field", "weight"};
  for (std::size_t i = 0; i < orbits_.size(); ++i) {
    const auto& orb = orbits_.orbit(i);
    r.rows.push_back({cell(static_cast<long long>(i)), exps_str(orb.rep), cell(orb.order),
                      cell(orb.degree), cyclo::field_name(orb.order),
                      i == 0 ? std::string("0") : cell(weight_.at(i - 1))});
  }
  return r;
}

Report Experiment::enumerate_report() const {
  check_arg(cfg_.bound >= 1, "enumerate needs X >= 1");
  Report r;
  r.command = "enumerate";
  base_preamble(r);
  r.add("X", cell(cfg_.bound));
  r.columns = {"index", "class_label", "support"};

  struct Obs : fideals::EnumObserver {
    const cyclo::RayClassSystem& sys;
    std::vector<std::vector<std::string>>& rows;
    std::vector<long long> cls;
    std::vector<std::string> ent;
    Obs(const cyclo::RayClassSystem& s, std::size_t components,
        std::vector<std::vector<std::string>>& out)
        : sys(s), rows(out) {
      cls.push_back(system_identity(s, components));
    }
    void push(std::size_t t, const cyclo::CycloPrime& prime) override {
      cls.push_back(sys.compose(cls.back(), sys.class_of_prime(t, prime)));
      ent.push_back("t" + std::to_string(t + 1) + ":" + std::to_string(prime.p) + ":" +
                    cyclo::qstr(cyclo::field_for_conductor(prime.conductor), prime.gen));
    }
    void pop() override {
      cls.pop_back();
      ent.pop_back();
    }
    void node(const fideals::LambdaIdeal&, unsigned long long index) override {
      rows.push_back({cell(index), sys.class_label(cls.back()), join(ent, ";")});
    }
  };

  Obs obs(sys_, orbits_.components(), r.rows);
  fideals::Enumerator(cfg_.bound, cfg_.modulus, weight_, orbits_).run_all(obs);
  return r;
}

Report Experiment::count_report() const {
  check_arg(cfg_.bound >= 1, "count needs X >= 1");
  Report r;
  r.command = "count";
  base_preamble(r);
  r.add("X", cell(cfg_.bound));
  r.add("p_max", cell(cfg_.p_max));
  r.columns = {"class_label", "X", "count", "predicted", "ratio"};

  dirichlet::Evaluator ev(orbits_, weight_, sys_);
  dirichlet::AsymptoticPrediction pred;
  bool have = prediction_preamble(r, ev, pred);
  double total_pred = have ? dirichlet::tauberian_predict(pred, static_cast<double>(cfg_.bound)) : 0;

  auto tally = counting::kappa_all(cfg_.bound, orbits_, weight_, sys_, cfg_.threads);

  if (cfg_.fibers_file.empty()) {
    tally_rows(r, tally, cfg_.bound, total_pred);
    return r;
  }

  auto fp = load_fibers(cfg_.fibers_file, cfg_);
  auto ns = counting::assemble_N(tally, fp);
  r.add("fibers", cfg_.fibers_file);
  r.add("kpsi", cell(fp.kpsi));
  r.add("kf", cell(fp.kf));
  long long ncl = sys_.num_classes();
  unsigned long long grand = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    grand += ns[i].second;
    double pc = total_pred / static_cast<double>(ncl) * static_cast<double>(fp.kpsi) *
                static_cast<double>(fp.classes[i].size());
    std::vector<std::string> row{ns[i].first, cell(cfg_.bound), cell(ns[i].second)};
    row.push_back(total_pred > 0 ? cell(pc) : "");
    row.push_back(total_pred > 0 ? cell(static_cast<double>(ns[i].second) / pc) : "");
    r.rows.push_back(std::move(row));
  }
  double tp = total_pred * static_cast<double>(fp.kpsi);
  std::vector<std::string> row{"total", cell(cfg_.bound), cell(grand)};
  row.push_back(total_pred > 0 ? cell(tp) : "");
  row.push_back(total_pred > 0 ? cell(static_cast<double>(grand) / tp) : "");
  r.rows.push_back(std::move(row));
  return r;
}

Report Experiment::predict_report() const {
  Report r;
  r.command = "predict";
  base_preamble(r);
  r.add("p_max", cell(cfg_.p_max));
  dirichlet::Evaluator ev(orbits_, weight_, sys_);
  auto pred = ev.predict_total(cfg_.p_max);
  auto est = ev.residue_b(weight_.alpha(), 0, cfg_.p_max);
  r.columns = {"name", "value"};
  r.rows.push_back({"beta", cell(pred.beta)});
  r.rows.push_back({"delta", cell(pred.delta)});
  r.rows.push_back({"tau", cell(pred.tau)});
  r.rows.push_back({"tau_abs_tail", cell(est.abs_tail)});
  r.rows.push_back({"num_classes", cell(sys_.num_classes())});
  r.rows.push_back({"tau_per_class", cell(pred.tau / static_cast<double>(sys_.num_classes()))});
  return r;
}

Report Experiment::verify_report() const {
  Report r;
  r.command = "verify";
  base_preamble(r);
  std::vector<std::string> sched;
  for (auto x : cfg_.schedule) sched.push_back(std::to_string(x));
  r.add("schedule", join(sched, ","));
  r.add("p_max", cell(cfg_.p_max));
  r.add("threads", cell(static_cast<long long>(cfg_.threads)));
  r.columns = {"class_label", "X", "count", "predicted", "ratio"};

  dirichlet::Evaluator ev(orbits_, weight_, sys_);
  dirichlet::AsymptoticPrediction pred;
  bool have = prediction_preamble(r, ev, pred);
  if (have) {
    try {
      auto v = ev.verdict(cfg_.threshold, cfg_.p_max, cfg_.premise_p_max);
      r.add("independent", v.independent ? "true" : "false");
    } catch (const Error& e) {
      r.add("verdict_error", e.what());
    }
  }

  for (auto X : cfg_.schedule) {
    check_arg(X >= 1, "schedule bounds must be >= 1");
    auto tally = counting::kappa_all(X, orbits_, weight_, sys_, cfg_.threads);
    double total_pred =
        have ? dirichlet::tauberian_predict(pred, static_cast<double>(X)) : 0;
    tally_rows(r, tally, X, total_pred);
  }
  return r;
}

Report Experiment::verdict_report() const {
  Report r;
  r.command = "verdict";
  base_preamble(r);
  r.add("p_max", cell(cfg_.p_max));
  r.add("premise_p_max", cell(cfg_.premise_p_max));
  dirichlet::Evaluator ev(orbits_, weight_, sys_);
  auto v = ev.verdict(cfg_.threshold, cfg_.p_max, cfg_.premise_p_max);
  r.add("independent", v.independent ? "true" : "false");
  r.add("vacuous", v.vacuous ? "true" : "false");
  r.add("threshold_used", cell(v.threshold_used));
  r.columns = {"chi", "magnitude", "threshold", "premise_min"};
  for (const auto& w : v.witnesses)
    r.rows.push_back({cell(w.chi), cell(w.magnitude), cell(w.threshold), cell(w.premise_min)});
  return r;
}

Report Experiment::stickelberger_report() const {
  Report r;
  r.command = "stickelberger";
  std::vector<std::string> f;
  for (long long x : group_.invariant_factors()) f.push_back(std::to_string(x));
  r.add("group", join(f, ","));

  if (!cfg_.alpha.empty()) {
    check_arg(static_cast<long long>(cfg_.alpha.size()) == group_.order(),
              "alpha needs one coefficient per character (" + std::to_string(group_.order()) +
                  " values)");
    abelian::DualElement a{cfg_.alpha};
    auto theta = abelian::stickelberger_theta(group_, a);
    bool integral = abelian::all_integral(theta);
    bool in_hat = abelian::in_A_hat(group_, a);
    std::vector<std::string> ac;
    for (long long x : cfg_.alpha) ac.push_back(std::to_string(x));
    r.add("alpha", join(ac, ","));
    r.add("theta_integral", integral ? "true" : "false");
    r.add("in_A_hat", in_hat ? "true" : "false");
    r.add("criterion_consistent", integral == in_hat ? "true" : "false");
    r.columns = {"element", "theta"};
    for (long long i = 0; i < group_.order(); ++i)
      r.rows.push_back({element_str(i), theta[static_cast<std::size_t>(i)].str()});
    return r;
  }

  check_arg(group_.order() <= 512,
            "pairing table needs |G| <= 512; pass alpha = c0,c1,... for a theta report");
  r.columns = {"chi", "element", "pairing"};
  for (long long c = 0; c < group_.order(); ++c) {
    auto chi = group_.exps_of(c);
    for (long long i = 0; i < group_.order(); ++i)
      r.rows.push_back({exps_str(chi), element_str(i),
                        abelian::stickelberger_pairing(group_, chi, group_.exps_of(i)).str()});
  }
  return r;
}

Report Experiment::check_bounds_report() const {
  Report r;
  r.command = "check-bounds";
  base_preamble(r);
  r.add("grid_p_max", cell(cfg_.grid_p_max));
  std::vector<std::string> sv;
  for (double s : cfg_.grid_s) sv.push_back(cell(s));
  r.add("grid_s", join(sv, ","));
  r.columns = {"p", "s", "max_ratio", "holds"};

  dirichlet::Evaluator ev(orbits_, weight_, sys_);
  bool all_hold = true;
  for (auto p : primes_up_to(cfg_.grid_p_max)) {
    if (cfg_.modulus % p == 0) continue;
    for (double s : cfg_.grid_s) {
      double max_ratio = 0;
      bool holds = true;
      for (long long chi = 0; chi < sys_.num_characters(); ++chi) {
        auto bc = ev.check_comp1_bound(p, {s, 0}, chi);
        max_ratio = std::max(max_ratio, bc.lhs / bc.rhs);
        holds = holds && bc.holds;
      }
      all_hold = all_hold && holds;
      r.rows.push_back({cell(static_cast<long long>(p)), cell(s), cell(max_ratio),
                        holds ? "true" : "false"});
    }
  }
  r.add("all_hold", all_hold ? "true" : "false");
  return r;
}

}  // namespace tame::engine
