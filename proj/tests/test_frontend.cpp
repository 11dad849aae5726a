#include <doctest.h>

#include <random>
#include <sstream>

#include "amwc/fft.hpp"
#include "amwc/frontend.hpp"
#include "test_util.hpp"

using namespace amwc;

namespace {

// Mix, filter over the full dense DFT, then keep every decim-th sample.
CVector brute_channel(const RVector& x, const RVector& chips, const FilterResponse& f, const DerivedParams& dp) {
  const std::int64_t n = dp.n_dense;
  const RVector pr = pr_waveform_dense(chips, dp);
  std::vector<cdouble> mixed(n);
  for (std::int64_t t = 0; t < n; ++t) mixed[t] = x(t) * pr(t);
  const std::vector<cdouble> X = test::naive_dft(mixed);
  CVector y(dp.adc_len);
  for (std::int64_t s = 0; s < dp.adc_len; ++s) {
    cdouble acc = 0.0;
    for (std::int64_t m = -f.half; m < f.half; ++m)
      acc += f.at(m) * X[mod_floor(m, n)] *
             std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(mod_floor(m * s * dp.decim, n)) / n);
    y(s) = acc / static_cast<double>(n);
  }
  return y;
}

DenseSignal random_signal(const DerivedParams& dp, Rng& rng) {
  CVector half = CVector::Zero(dp.n_dense / 2 + 1);
  for (std::int64_t m = 1; m < dp.nyq_half_bins; ++m) half(m) = complex_normal(rng);
  return signal_from_half_spectrum(half, dp);
}

}  // namespace

TEST_SUITE("frontend") {

TEST_CASE("channel_output equals mix, full filter and decimation") {
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {2, 3}, {3, 5}}) {
    for (LpfKind kind : {LpfKind::Ideal, LpfKind::Random}) {
      const DerivedParams dp = derive_params(test::small_config(p, q, 7, 1, 2, kind));
      Rng rng(static_cast<std::uint64_t>(p * 10 + q));
      const DenseSignal x = random_signal(dp, rng);
      const PRBank bank = make_pr_bank(dp, 2);
      const FilterResponse f = build_lpf(kind, dp, 3);
      const RVector chips = bank.chips.row(0).transpose();
      const CVector y = channel_output(x, chips, f, dp);
      CHECK(y.size() == dp.adc_len);
      CHECK(test::rel_err(y, brute_channel(x.samples, chips, f, dp)) < 1e-11);
    }
  }
}

TEST_CASE("channelize maps a tone to one block entry") {
  const DerivedParams dp = derive_params(test::small_config(2, 5, 7, 1, 3));
  const std::int64_t n = dp.adc_len;
  for (int u = 0; u < dp.q_prime; ++u)
    for (std::int64_t j = 0; j < dp.subband_bins; ++j) {
      const std::int64_t b = mod_floor(dp.w_offset + dp.subband_bins * u + j, n);
      CVector y(n);
      for (std::int64_t s = 0; s < n; ++s)
        y(s) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(b * s % n) / n);
      const CMatrix Z = channelize(y, dp);
      REQUIRE(std::abs(Z(u, j) - static_cast<double>(n)) < 1e-9);
      REQUIRE(Z.norm() == doctest::Approx(static_cast<double>(n)));
    }
  CHECK_THROWS(channelize(CVector::Zero(n + 1), dp));
}

TEST_CASE("channelize covers every DFT bin exactly once") {
  for (int p = 1; p <= 4; ++p) {
    const DerivedParams dp = derive_params(test::small_config(p, 5, 7, 1, 2));
    std::vector<int> hits(dp.adc_len, 0);
    for (int u = 0; u < dp.q_prime; ++u)
      for (std::int64_t j = 0; j < dp.subband_bins; ++j) ++hits[mod_floor(dp.w_offset + dp.subband_bins * u + j, dp.adc_len)];
    CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  }
}

TEST_CASE("acquire is linear and matches the model") {
  for (LpfKind kind : {LpfKind::Ideal, LpfKind::Random})
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {2, 5}, {3, 7}, {4, 3}}) {
      const DerivedParams dp = derive_params(test::small_config(p, q, 7, 2, 2, kind));
      Rng rng(static_cast<std::uint64_t>(100 + p * q));
      const DenseSignal a = random_signal(dp, rng);
      const DenseSignal b = random_signal(dp, rng);
      const PRBank bank = make_pr_bank(dp, 11);
      const FilterResponse f = build_lpf(kind, dp, 12);
      DenseSignal sum = a;
      sum.samples = 2.0 * a.samples - 0.5 * b.samples;
      const CMatrix Za = acquire(a, bank, f, dp).Z;
      const CMatrix Zb = acquire(b, bank, f, dp).Z;
      CHECK(test::rel_err(acquire(sum, bank, f, dp).Z, 2.0 * Za - 0.5 * Zb) < 1e-12);
      const SensingModel model = make_sensing_model(bank, f, dp);
      CHECK(test::rel_err(Za, model_predict(model, extract_X2W(a, dp))) < 1e-9);
    }
}

TEST_CASE("model_predict on one-hot X picks a sensing column") {
  const DerivedParams dp = derive_params(test::small_config(2, 3, 7, 2, 2, LpfKind::Random));
  const PRBank bank = make_pr_bank(dp, 11);
  const SensingModel model = make_sensing_model(bank, build_lpf(LpfKind::Random, dp, 1), dp);
  for (Eigen::Index k = 0; k < model.cols(); ++k)
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(model.bins()); ++j) {
      CMatrix X = CMatrix::Zero(model.cols(), model.bins());
      X(k, j) = 1.0;
      const CMatrix Z = model_predict(model, X);
      REQUIRE(Z.col(j) == model.at_bin(j).col(k));
      REQUIRE(Z.norm() == doctest::Approx(model.at_bin(j).col(k).norm()));
    }
  CHECK_THROWS(model_predict(model, CMatrix::Zero(model.cols() + 1, model.bins())));
}

TEST_CASE("a wrong calibration scalar is visible") {
  const DerivedParams dp = derive_params(test::small_config(2, 3));
  Rng rng(6);
  const DenseSignal x = random_signal(dp, rng);
  const PRBank bank = make_pr_bank(dp, 1);
  const FilterResponse f = build_lpf(LpfKind::Ideal, dp, 1);
  const SensingModel model = make_sensing_model(bank, f, dp);
  const CMatrix ref = model_predict(model, extract_X2W(x, dp));
  const MeasurementSet ms = acquire(x, bank, f, dp, default_calibration(dp) * 1.001);
  CHECK(test::rel_err(ms.Z, ref) == doctest::Approx(1e-3).epsilon(1e-6));
  CHECK(ms.calibration == doctest::Approx(1.001 / dp.adc_len));
}

TEST_CASE("write_measurements_csv layout") {
  MeasurementSet ms;
  ms.q_prime = 3;
  ms.Z = CMatrix::Zero(6, 2);
  ms.Z(4, 1) = cdouble(1.5, -2);
  std::stringstream ss;
  write_measurements_csv(ss, ms);
  std::string text = ss.str();
  CHECK(text.rfind("row_i,row_u,col_j,re,im\n", 0) == 0);
  CHECK(text.find("2,1,1,1.5,-2\n") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 13);
}

}  // TEST_SUITE
