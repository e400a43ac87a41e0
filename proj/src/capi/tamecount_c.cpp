#include "tamecount.h"

#include <exception>
#include <new>
#include <string>

#include "core/errors.hpp"
#include "engine/config.hpp"
#include "engine/experiment.hpp"

struct tc_engine {
  tame::engine::ExperimentConfig cfg;
  std::string report;
  std::string error;
};

namespace {

tc_status status_of(tame::Errc c) {
  switch (c) {
    case tame::Errc::invalid_argument: return TC_EINVAL;
    case tame::Errc::unsupported: return TC_EUNSUPPORTED;
    case tame::Errc::overflow: return TC_EOVERFLOW;
    case tame::Errc::divergent: return TC_EDIVERGENT;
    case tame::Errc::internal: return TC_EINTERNAL;
  }
  return TC_EINTERNAL;
}

template <typename Fn>
tc_status guarded(tc_engine* engine, Fn&& fn) {
  try {
    fn();
    engine->error.clear();
    return TC_OK;
  } catch (const tame::Error& e) {
    engine->error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    engine->error = e.what();
    return TC_EINTERNAL;
  } catch (...) {
    engine->error = "unknown failure";
    return TC_EINTERNAL;
  }
}

}  // namespace

extern "C" {

tc_engine* tc_engine_new(void) { return new (std::nothrow) tc_engine; }

void tc_engine_free(tc_engine* engine) { delete engine; }

tc_status tc_configure(tc_engine* engine, const char* key_value_text) {
  if (!engine) return TC_EINVAL;
  if (!key_value_text) {
    engine->error = "null configuration text";
    return TC_EINVAL;
  }
  return guarded(engine, [&] { tame::engine::apply_config_text(engine->cfg, key_value_text); });
}

tc_status tc_run(tc_engine* engine, const char* command) {
  if (!engine) return TC_EINVAL;
  if (!command) {
    engine->error = "null command";
    return TC_EINVAL;
  }
  return guarded(engine, [&] {
    tame::engine::Experiment ex(engine->cfg);
    engine->report = ex.render(ex.run(command));
  });
}

const char* tc_report(const tc_engine* engine) {
  return engine ? engine->report.c_str() : "";
}

const char* tc_last_error(const tc_engine* engine) {
  return engine ? engine->error.c_str() : "";
}

}  // extern "C"
