#ifndef AMWC_BAND_HPP
#define AMWC_BAND_HPP

#include <cstdint>
#include <vector>

namespace amwc {

/// One positive-frequency narrow band; its conjugate mirror at negative
/// frequency is implied.
///
/// Band content lives on the observation grid: it occupies every grid
/// frequency m*delta_f inside [f_center - width/2, f_center + width/2).
/// A band narrower than the grid spacing that contains no grid point
/// occupies the grid point nearest its centre.
struct Band {
  double f_center_hz = 0.0;
  double width_hz = 0.0;
  double energy = 0.0;  // time-domain energy of the band plus its mirror
};

struct BandSet {
  std::vector<Band> bands;
};

struct BinRange {
  std::int64_t first = 0;
  std::int64_t count = 0;
};

BinRange band_bins(const Band& band, double delta_f_hz);
/// Band whose interval spans exactly `bins`, edges halfway between grid points.
Band band_from_bins(BinRange bins, double delta_f_hz, double energy);

}  // namespace amwc

#endif  // AMWC_BAND_HPP
