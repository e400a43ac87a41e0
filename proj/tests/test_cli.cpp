#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(TAMECOUNT_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

// data lines of a CSV report, split into cells
std::vector<std::vector<std::string>> rows_of(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  return rows;
}

}  // namespace

TEST_CASE("count example produces four unit classes") {
  auto r = run("count --group 2 --weight ram --modulus 16 --X 10");
  REQUIRE(r.status == 0);
  auto rows = rows_of(r.out);
  REQUIRE(rows.size() == 5);
  unsigned long long sum = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(rows[i][2] == "1");
    sum += std::stoull(rows[i][2]);
  }
  CHECK(sum == 4);
  CHECK(rows[4][0] == "total");
  CHECK(rows[4][2] == "4");
}

TEST_CASE("orbits report for the cyclic group of order four") {
  auto r = run("orbits --group 4");
  REQUIRE(r.status == 0);
  auto rows = rows_of(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0][4] == "Q");
  CHECK(rows[1][2] == "2");
  CHECK(rows[1][5] == "2");
  CHECK(rows[2][2] == "4");
  CHECK(rows[2][4] == "Q(i)");
  CHECK(rows[2][5] == "3");
}

TEST_CASE("predict example lands on the known constant") {
  auto r = run("predict --group 2 --weight ram --modulus 16");
  REQUIRE(r.status == 0);
  auto rows = rows_of(r.out);
  std::map<std::string, std::string> kv;
  for (const auto& row : rows) kv[row[0]] = row[1];
  CHECK(std::stod(kv["beta"]) == 1.0);
  CHECK(std::stod(kv["delta"]) == 1.0);
  CHECK(std::stod(kv["tau"]) == doctest::Approx(0.405285).epsilon(1e-4));
  CHECK(std::stod(kv["tau_per_class"]) == doctest::Approx(0.405285 / 4).epsilon(1e-4));
  CHECK(kv["num_classes"] == "4");
}

TEST_CASE("identical invocations emit identical bytes") {
  std::string args = "count --group 2,2 --weight ram --modulus 16 --X 20000 --threads 3";
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("enumerate rows tally back to the count report") {
  auto en = run("enumerate --group 2 --weight ram --modulus 16 --X 5000");
  auto co = run("count --group 2 --weight ram --modulus 16 --X 5000");
  REQUIRE(en.status == 0);
  REQUIRE(co.status == 0);

  std::map<std::string, unsigned long long> offline;
  for (const auto& row : rows_of(en.out)) {
    REQUIRE(row.size() == 3);
    ++offline[row[1]];
  }
  std::map<std::string, unsigned long long> reported;
  unsigned long long total = 0;
  for (const auto& row : rows_of(co.out)) {
    if (row[0] == "total") {
      total = std::stoull(row[2]);
      continue;
    }
    reported[row[0]] = std::stoull(row[2]);
  }
  CHECK(offline == reported);
  unsigned long long offline_total = 0;
  for (const auto& [label, n] : offline) offline_total += n;
  CHECK(offline_total == total);
}

TEST_CASE("json format carries the same cells") {
  auto r = run("count --group 2 --weight ram --modulus 16 --X 10 --format json");
  REQUIRE(r.status == 0);
  CHECK(r.out.rfind("{", 0) == 0);
  CHECK(r.out.find("\"command\": \"count\"") != std::string::npos);
  CHECK(r.out.find("\"total\"") != std::string::npos);
}

TEST_CASE("config file and flags merge with flags winning") {
  std::string path = "/tmp/tame_cli_config.txt";
  {
    std::ofstream out(path);
    out << "group = 2\nweight = ram\nmodulus = 16\nX = 10\n";
  }
  auto base = run("count --config " + path);
  auto over = run("count --config " + path + " --X 100");
  std::remove(path.c_str());
  REQUIRE(base.status == 0);
  REQUIRE(over.status == 0);
  CHECK(base.out.find("# X = 10") != std::string::npos);
  CHECK(over.out.find("# X = 100") != std::string::npos);
}

TEST_CASE("environment thread override is honored and flags beat it") {
  auto env_ok = run("count --group 2 --weight ram --modulus 16 --X 1000", "TAMECOUNT_THREADS=2");
  CHECK(env_ok.status == 0);
  auto env_bad = run("count --group 2 --weight ram --modulus 16 --X 1000", "TAMECOUNT_THREADS=zero");
  CHECK(env_bad.status == 1);
  auto flag_wins =
      run("count --group 2 --weight ram --modulus 16 --X 1000 --threads 1", "TAMECOUNT_THREADS=zero");
  CHECK(flag_wins.status == 0);
  CHECK(env_ok.out == flag_wins.out);
}

TEST_CASE("exit codes separate config errors from success") {
  CHECK(run("count --group 2 --weight ram --modulus 16 --X 10").status == 0);
  CHECK(run("count --group 2 --X 10 --modulus 7").status == 1);
  CHECK(run("count --group 2 --weight ram --modulus 16").status == 1);
  CHECK(run("predict --group 5").status == 1);
  CHECK(run("transmogrify").status == 1);
  CHECK(run("").status == 1);
  CHECK(run("--help").status == 0);
  CHECK(run("count --help").status == 0);
}

TEST_CASE("output file receives the report") {
  std::string path = "/tmp/tame_cli_out.csv";
  auto direct = run("orbits --group 4");
  auto filed = run("orbits --group 4 --output " + path);
  REQUIRE(filed.status == 0);
  CHECK(filed.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::remove(path.c_str());
  CHECK(buf.str() == direct.out);
}

TEST_CASE("timing flag appends a timing line") {
  auto r = run("orbits --group 2 --timing");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("# timing_ms = ") != std::string::npos);
  CHECK(run("orbits --group 2").out.find("timing_ms") == std::string::npos);
}
