#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "tamecount.h"

extern "C" int capi_smoke(void);

TEST_CASE("C translation unit drives the engine") { CHECK(capi_smoke() == 0); }

TEST_CASE("configure, run, report cycle") {
  tc_engine* e = tc_engine_new();
  REQUIRE(e != nullptr);

  CHECK(tc_configure(e, "group = 2\nweight = ram\nmodulus = 16\nX = 10\n") == TC_OK);
  CHECK(tc_run(e, "count") == TC_OK);
  std::string report = tc_report(e);
  CHECK(report.rfind("# command = count", 0) == 0);
  CHECK(report.find("total,10,4,") != std::string::npos);
  CHECK(std::string(tc_last_error(e)).empty());

  SUBCASE("later configuration overrides earlier keys") {
    CHECK(tc_configure(e, "format = json\n") == TC_OK);
    CHECK(tc_run(e, "count") == TC_OK);
    CHECK(std::string(tc_report(e)).rfind("{", 0) == 0);
  }

  SUBCASE("failed run keeps an error message") {
    CHECK(tc_run(e, "transmogrify") == TC_EINVAL);
    CHECK(!std::string(tc_last_error(e)).empty());
    // report of the failed run is not published
    CHECK(std::string(tc_report(e)) == report);
    // a following success clears the error
    CHECK(tc_run(e, "orbits") == TC_OK);
    CHECK(std::string(tc_last_error(e)).empty());
  }

  tc_engine_free(e);
}

TEST_CASE("status codes mirror the failure classes") {
  tc_engine* e = tc_engine_new();
  REQUIRE(e != nullptr);

  CHECK(tc_configure(e, "bogus_key = 1\n") == TC_EINVAL);
  CHECK(std::string(tc_last_error(e)).find("bogus_key") != std::string::npos);

  CHECK(tc_configure(e, "group = 5\n") == TC_OK);
  CHECK(tc_run(e, "predict") == TC_EUNSUPPORTED);
  CHECK(!std::string(tc_last_error(e)).empty());

  CHECK(tc_run(e, "count") == TC_EINVAL);  // X missing

  tc_engine_free(e);
}

TEST_CASE("null arguments are refused") {
  CHECK(tc_configure(nullptr, "group = 2\n") == TC_EINVAL);
  CHECK(tc_run(nullptr, "orbits") == TC_EINVAL);
  CHECK(std::string(tc_report(nullptr)).empty());
  CHECK(std::string(tc_last_error(nullptr)).empty());

  tc_engine* e = tc_engine_new();
  REQUIRE(e != nullptr);
  CHECK(tc_configure(e, nullptr) == TC_EINVAL);
  CHECK(tc_run(e, nullptr) == TC_EINVAL);
  tc_engine_free(e);
}

TEST_CASE("reports are stable until the next run") {
  tc_engine* e = tc_engine_new();
  REQUIRE(e != nullptr);
  CHECK(tc_configure(e, "group = 4\n") == TC_OK);
  CHECK(tc_run(e, "orbits") == TC_OK);
  const char* p = tc_report(e);
  std::string copy = p;
  CHECK(std::string(p) == copy);
  CHECK(tc_run(e, "stickelberger") == TC_OK);
  CHECK(std::string(tc_report(e)) != copy);
  tc_engine_free(e);
}
