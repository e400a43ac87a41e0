#include "core/counting.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>
#include <utility>

#include "core/errors.hpp"

namespace tame::counting {

namespace {

enum class Mode { all, omit, full };

long long identity_combined(const cyclo::RayClassSystem& sys) {
  if (sys.class_blind()) return sys.identity();
  std::vector<long long> ids(sys.components());
  for (std::size_t t = 0; t < sys.components(); ++t)
    ids[t] = sys.component_group(t)->identity_class();
  return sys.combine(ids);
}

// Follows the enumeration with an incremental class computation: one digit
// per component on a stack, composed through small per-component tables so
// that a push costs a few array lookups.
class TallyObserver : public fideals::EnumObserver {
 public:
  TallyObserver(const cyclo::RayClassSystem& sys, Mode mode, std::size_t omit_t)
      : sys_(sys), mode_(mode), omit_t_(omit_t), nc_(sys.components()), stride_(std::max<std::size_t>(nc_, 1)) {
    counts.assign((std::size_t)sys.num_classes(), 0);
    digits_.assign((max_depth_ + 1) * stride_, 0);
    used_.assign(stride_, 0);
    if (!sys_.class_blind()) {
      tables_.resize(nc_);
      for (std::size_t t = 0; t < nc_; ++t) {
        const cyclo::RayClassGroup* g = sys_.component_group(t);
        digits_[t] = g->identity_class();
        long long m = g->order();
        if (m > 2048) continue;  // fall back to group calls for huge components
        tables_[t].assign((std::size_t)(m * m), 0);
        for (long long a = 0; a < m; ++a)
          for (long long b = 0; b < m; ++b)
            tables_[t][(std::size_t)(a * m + b)] = (std::uint32_t)g->compose(a, b);
      }
    }
  }

  void push(std::size_t t, const cyclo::CycloPrime& prime) override {
    check_arg(depth_ < max_depth_, "enumeration deeper than expected");
    const long long* parent = row(depth_);
    long long* child = row(depth_ + 1);
    for (std::size_t k = 0; k < nc_; ++k) child[k] = parent[k];
    if (!sys_.class_blind()) {
      const cyclo::RayClassGroup* g = sys_.component_group(t);
      long long delta = g->class_of_prime(prime);
      child[t] = tables_[t].empty()
                     ? g->compose(parent[t], delta)
                     : (long long)tables_[t][(std::size_t)(parent[t] * g->order() + delta)];
    }
    comp_stack_[depth_] = t;
    ++used_[t];
    ++depth_;
  }

  void pop() override {
    --depth_;
    --used_[comp_stack_[depth_]];
  }

  void node(const fideals::LambdaIdeal&, unsigned long long) override {
    if (mode_ == Mode::omit && used_[omit_t_] > 0) return;
    if (mode_ == Mode::full)
      for (std::size_t t = 0; t < nc_; ++t)
        if (used_[t] == 0) return;
    long long cls = 0;
    if (!sys_.class_blind()) {
      const long long* d = row(depth_);
      for (std::size_t t = 0; t < nc_; ++t)
        cls = cls * sys_.component_group(t)->order() + d[t];
    }
    ++counts[(std::size_t)cls];
  }

  std::vector<unsigned long long> counts;

 private:
  long long* row(std::size_t depth) { return digits_.data() + depth * stride_; }

  const cyclo::RayClassSystem& sys_;
  Mode mode_;
  std::size_t omit_t_;
  std::size_t nc_;
  std::size_t stride_;
  std::size_t depth_ = 0;
  static constexpr std::size_t max_depth_ = 64;
  std::vector<long long> digits_;
  std::size_t comp_stack_[max_depth_] = {};
  std::vector<int> used_;
  std::vector<std::vector<std::uint32_t>> tables_;
};

ClassTally tally_impl(Mode mode, std::size_t omit_t, unsigned long long X,
                      const abelian::OrbitTable& orbits, const fideals::Weight& w,
                      const cyclo::RayClassSystem& sys, int threads) {
  check_arg(sys.components() == orbits.components(), "class system does not match the orbits");
  fideals::Enumerator enumerator(X, sys.modulus(), w, orbits);

  ClassTally out;
  out.modulus = sys.modulus();
  out.weight_name = w.name();
  out.bound = X;
  out.counts.assign((std::size_t)sys.num_classes(), 0);

  if (threads <= 1 || enumerator.num_tasks() < 16) {
    TallyObserver obs(sys, mode, omit_t);
    enumerator.run_all(obs);
    out.counts = std::move(obs.counts);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::vector<unsigned long long>> partial((std::size_t)threads);
    auto body = [&](std::size_t worker) {
      TallyObserver obs(sys, mode, omit_t);
      for (;;) {
        std::size_t k = next.fetch_add(1);
        if (k >= enumerator.num_tasks()) break;
        enumerator.run_task(k, obs);
      }
      partial[worker] = std::move(obs.counts);
    };
    std::vector<std::thread> pool;
    pool.reserve((std::size_t)threads);
    for (int k = 0; k < threads; ++k) pool.emplace_back(body, (std::size_t)k);
    for (auto& th : pool) th.join();
    for (const auto& p : partial)
      for (std::size_t c = 0; c < p.size(); ++c) out.counts[c] += p[c];
    // the trivial ideal lives outside every task; it counts except in full
    // mode with at least one component to cover
    if (mode != Mode::full || sys.components() == 0)
      ++out.counts[(std::size_t)identity_combined(sys)];
  }
  for (unsigned long long c : out.counts) out.total += c;
  return out;
}

}  // namespace

ClassTally kappa_all(unsigned long long X, const abelian::OrbitTable& orbits,
                     const fideals::Weight& w, const cyclo::RayClassSystem& sys, int threads) {
  return tally_impl(Mode::all, 0, X, orbits, w, sys, threads);
}

ClassTally kappa_omit(std::size_t t, unsigned long long X, const abelian::OrbitTable& orbits,
                      const fideals::Weight& w, const cyclo::RayClassSystem& sys, int threads) {
  check_arg(t < orbits.components(), "no such component");
  return tally_impl(Mode::omit, t, X, orbits, w, sys, threads);
}

FullTally kappa_full(unsigned long long X, const abelian::OrbitTable& orbits,
                     const fideals::Weight& w, const cyclo::RayClassSystem& sys, int threads) {
  FullTally out;
  out.direct = tally_impl(Mode::full, 0, X, orbits, w, sys, threads);
  out.all = tally_impl(Mode::all, 0, X, orbits, w, sys, threads);
  for (std::size_t t = 0; t < orbits.components(); ++t)
    out.omit.push_back(tally_impl(Mode::omit, t, X, orbits, w, sys, threads));
  out.subtraction.assign(out.all.counts.size(), 0);
  for (std::size_t c = 0; c < out.all.counts.size(); ++c) {
    long long v = (long long)out.all.counts[c];
    for (const auto& o : out.omit) v -= (long long)o.counts[c];
    out.subtraction[c] = v;
  }
  return out;
}

FiberPartition FiberPartition::trivial(long long num_classes) {
  FiberPartition f;
  f.labels.push_back("all");
  f.classes.emplace_back();
  for (long long c = 0; c < num_classes; ++c) f.classes.back().push_back(c);
  return f;
}

std::vector<std::pair<std::string, unsigned long long>> assemble_N(
    const ClassTally& tally, const FiberPartition& fibers) {
  check_arg(fibers.labels.size() == fibers.classes.size(), "fiber labels do not match fibers");
  check_arg(fibers.kpsi >= 1 && fibers.kf >= 1, "kernel constants must be positive");
  std::set<long long> seen;
  for (const auto& f : fibers.classes) {
    if (fibers.equal_size && (long long)f.size() != fibers.kf)
      fail(Errc::invalid_argument, "fiber size differs from kf with the equal-size flag set");
    for (long long c : f)
      if (c < 0 || (std::size_t)c >= tally.counts.size() || !seen.insert(c).second)
        fail(Errc::invalid_argument, "fibers must partition the class set");
  }
  if (seen.size() != tally.counts.size())
    fail(Errc::invalid_argument, "fibers must partition the class set");

  std::vector<std::pair<std::string, unsigned long long>> out;
  out.reserve(fibers.classes.size());
  for (std::size_t i = 0; i < fibers.classes.size(); ++i) {
    unsigned long long sum = 0;
    for (long long c : fibers.classes[i]) sum += tally.counts[(std::size_t)c];
    out.emplace_back(fibers.labels[i], (unsigned long long)fibers.kpsi * sum);
  }
  return out;
}

}  // namespace tame::counting
