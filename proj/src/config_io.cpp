#include "amwc/config_io.hpp"

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace amwc {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  T value{};
  is >> value;
  if (is.fail() || !is.eof())
    throw std::invalid_argument("config: bad value for '" + key + "': '" + text + "'");
  return value;
}

}  // namespace

SystemConfig parse_config(std::istream& in, const SystemConfig& base) {
  SystemConfig cfg = base;
  std::set<std::string> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) throw std::invalid_argument("config: repeated key '" + key + "'");

    if (key == "f_max_hz") cfg.f_max_hz = parse_number<double>(key, value);
    else if (key == "L") cfg.L = parse_number<int>(key, value);
    else if (key == "M") cfg.M = parse_number<int>(key, value);
    else if (key == "p") cfg.p = parse_number<int>(key, value);
    else if (key == "q_prime") cfg.q_prime = parse_number<int>(key, value);
    else if (key == "W") cfg.W = parse_number<int>(key, value);
    else if (key == "band_max_width_hz") cfg.band_max_width_hz = parse_number<double>(key, value);
    else if (key == "lpf_kind") cfg.lpf_kind = lpf_kind_from_string(value);
    else if (key == "master_seed") cfg.master_seed = parse_number<std::uint64_t>(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
  }
  validate(cfg);
  return cfg;
}

SystemConfig load_config(const std::string& path, const SystemConfig& base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  try {
    return parse_config(in, base);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_config(std::ostream& out, const SystemConfig& cfg) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "f_max_hz = " << cfg.f_max_hz << '\n'
      << "L = " << cfg.L << '\n'
      << "M = " << cfg.M << '\n'
      << "p = " << cfg.p << '\n'
      << "q_prime = " << cfg.q_prime << '\n'
      << "W = " << cfg.W << '\n'
      << "band_max_width_hz = " << cfg.band_max_width_hz << '\n'
      << "lpf_kind = " << to_string(cfg.lpf_kind) << '\n'
      << "master_seed = " << cfg.master_seed << '\n';
}

void save_config(const std::string& path, const SystemConfig& cfg) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file '" + path + "'");
  write_config(out, cfg);
}

}  // namespace amwc
