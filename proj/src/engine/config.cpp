#include "engine/config.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>

#include "core/errors.hpp"

namespace tame::engine {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

long long parse_ll(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long long r = std::stoll(v, &pos);
    check_arg(pos == v.size(), key + " has trailing junk: " + v);
    return r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::invalid_argument, key + " is not an integer: " + v);
  }
}

unsigned long long parse_ull(const std::string& key, const std::string& v) {
  long long r = parse_ll(key, v);
  check_arg(r >= 0, key + " must be nonnegative: " + v);
  return static_cast<unsigned long long>(r);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double r = std::stod(v, &pos);
    check_arg(pos == v.size(), key + " has trailing junk: " + v);
    return r;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(Errc::invalid_argument, key + " is not a number: " + v);
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "on" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "off" || v == "no") return false;
  fail(Errc::invalid_argument, key + " is not a boolean: " + v);
}

std::vector<long long> parse_ll_list(const std::string& key, const std::string& v) {
  std::vector<long long> out;
  for (const auto& part : split_list(v)) out.push_back(parse_ll(key, part));
  return out;
}

void apply_one(ExperimentConfig& cfg, const std::string& key, const std::string& v) {
  if (key == "group") {
    cfg.group = parse_ll_list(key, v);
  } else if (key == "weight") {
    check_arg(!v.empty(), "weight must not be empty");
    cfg.weight = v;
  } else if (key == "modulus") {
    cfg.modulus = parse_ll(key, v);
    check_arg(cfg.modulus >= 1, "modulus must be positive");
  } else if (key == "override_modulus") {
    cfg.override_modulus = parse_bool(key, v);
  } else if (key == "X") {
    cfg.bound = parse_ull(key, v);
  } else if (key == "schedule") {
    cfg.schedule.clear();
    for (const auto& part : split_list(v)) cfg.schedule.push_back(parse_ull(key, part));
  } else if (key == "fibers") {
    cfg.fibers_file = v;
  } else if (key == "kpsi") {
    cfg.kpsi = parse_ll(key, v);
    check_arg(cfg.kpsi >= 1, "kpsi must be positive");
  } else if (key == "kf") {
    cfg.kf = parse_ll(key, v);
    check_arg(cfg.kf >= 1, "kf must be positive");
  } else if (key == "equal_size") {
    cfg.equal_size = parse_bool(key, v);
  } else if (key == "format") {
    check_arg(v == "csv" || v == "json", "format must be csv or json");
    cfg.format = v;
  } else if (key == "p_max") {
    cfg.p_max = parse_ull(key, v);
    check_arg(cfg.p_max >= 2, "p_max must be at least 2");
  } else if (key == "premise_p_max") {
    cfg.premise_p_max = parse_ull(key, v);
  } else if (key == "threshold") {
    cfg.threshold = parse_double(key, v);
    check_arg(cfg.threshold >= 0, "threshold must be nonnegative");
  } else if (key == "threads") {
    cfg.threads = static_cast<int>(parse_ll(key, v));
    check_arg(cfg.threads >= 1, "threads must be positive");
  } else if (key == "alpha") {
    cfg.alpha = parse_ll_list(key, v);
  } else if (key == "grid_p_max") {
    cfg.grid_p_max = parse_ull(key, v);
    check_arg(cfg.grid_p_max >= 2, "grid_p_max must be at least 2");
  } else if (key == "grid_s") {
    cfg.grid_s.clear();
    for (const auto& part : split_list(v)) cfg.grid_s.push_back(parse_double(key, part));
    check_arg(!cfg.grid_s.empty(), "grid_s must not be empty");
  } else if (key == "timing") {
    cfg.timing = parse_bool(key, v);
  } else {
    fail(Errc::invalid_argument, "unknown config key: " + key);
  }
}

}  // namespace

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    check_arg(eq != std::string::npos, "config line has no '=': " + t);
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    check_arg(!key.empty(), "config line has empty key: " + t);
    apply_one(cfg, key, value);
  }
}

}  // namespace tame::engine
