#ifndef AMWC_CONFIG_IO_HPP
#define AMWC_CONFIG_IO_HPP

#include <iosfwd>
#include <string>

#include "amwc/config.hpp"

namespace amwc {

// key = value text, one entry per line; '#' starts a comment.
// Keys: f_max_hz, L, M, p, q_prime, W, band_max_width_hz, lpf_kind, master_seed.
// Unknown or repeated keys are rejected; missing keys keep the value already
// present in `base`.
SystemConfig parse_config(std::istream& in, const SystemConfig& base = {});
SystemConfig load_config(const std::string& path, const SystemConfig& base = {});

void write_config(std::ostream& out, const SystemConfig& cfg);
void save_config(const std::string& path, const SystemConfig& cfg);

}  // namespace amwc

#endif  // AMWC_CONFIG_IO_HPP
