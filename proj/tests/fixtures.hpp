#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dd/dataio.hpp"
#include "dd/screening.hpp"
#include "dd/series.hpp"

namespace fixtures {

// First participant of the study file: indifference points at
// 1, 7, 30, 90, 365, 1825, 9125 days.
inline dd::IndifferenceSeries subject1() {
  return dd::IndifferenceSeries(
      {1, 7, 30, 90, 365, 1825, 9125},
      {0.4922, 0.9922, 0.9454, 0.8984, 0.8984, 0.3984, 0.1016});
}

// The 106 fitted Mazur rates of the study sample (one per participant).
inline const std::vector<double>& k_vec() {
  static const std::vector<double> k{
      7.052959e-04, 1.952525e-02, 6.279889e-03, 3.106512e+00, 9.443459e-04,
      1.183173e-02, 7.792406e-03, 4.121380e-02, 2.166866e-03, 1.851430e-03,
      1.835216e-02, 6.848412e-02, 1.253200e-02, 5.644911e-05, 3.917017e-03,
      2.750789e-02, 9.416390e-03, 2.706837e-03, 1.158562e-01, 2.339159e-04,
      5.654420e-02, 1.924157e-02, 7.786736e-04, 2.225344e-03, 1.238148e-02,
      1.737184e-03, 1.006645e-02, 6.653795e-02, 4.119001e-04, 4.115331e-04,
      2.122284e-02, 8.613770e-02, 1.438784e+00, 2.457380e-02, 1.087262e-03,
      4.645629e-03, 4.105892e-02, 9.843393e-03, 2.102845e-03, 3.947859e-01,
      4.392440e-03, 1.043863e-02, 5.207565e-03, 2.480166e-03, 2.890474e-01,
      7.969068e-03, 1.041180e-06, 1.111135e-02, 1.334191e-03, 4.690139e-02,
      1.541998e-02, 2.656261e-03, 2.676365e-03, 1.582058e-01, 2.288003e-03,
      1.606234e-02, 1.598051e-02, 5.757535e-02, 1.524680e-02, 5.524457e-01,
      1.029969e-03, 4.620361e-01, 1.040897e-02, 3.163147e-04, 5.727909e-03,
      1.660060e-01, 1.531857e-02, 5.343197e-01, 3.719899e-02, 1.558544e-01,
      1.345135e-03, 3.329768e-04, 4.723152e-05, 3.592244e-02, 8.398586e-01,
      3.267308e+00, 1.283517e-03, 2.957418e-02, 5.499067e-03, 1.423051e-01,
      2.190507e-03, 3.898910e-03, 6.109505e-04, 5.744756e-04, 1.192669e-02,
      3.503430e-04, 5.695165e-02, 1.393875e-02, 1.192544e-01, 1.404184e-04,
      4.431371e-04, 1.813248e-02, 3.385442e-03, 4.639105e-03, 1.151348e-02,
      1.204211e-02, 1.318007e-03, 5.991004e-03, 1.141583e-02, 6.315233e-04,
      1.683690e-02, 4.873263e-04, 4.684651e-03, 1.041180e-06, 1.500254e-03,
      6.310517e-03};
  return k;
}

// Noise-free hyperbolic series on the default schedule.
inline dd::IndifferenceSeries mazur_series(double k) {
  const auto& d = dd::default_delay_schedule();
  std::vector<double> y;
  for (double delay : d) y.push_back(1.0 / (1.0 + k * delay));
  return dd::IndifferenceSeries(d, y);
}

inline dd::IndifferenceSeries rachlin_series(double k, double s) {
  const auto& d = dd::default_delay_schedule();
  std::vector<double> y;
  for (double delay : d)
    y.push_back(1.0 / (1.0 + k * std::exp(s * std::log(delay))));
  return dd::IndifferenceSeries(d, y);
}

// Hyperbolic series with additive noise, clipped into [0,1].
inline dd::IndifferenceSeries noisy_mazur_series(double k, double noise_sd,
                                                 std::mt19937& rng) {
  const auto& d = dd::default_delay_schedule();
  std::normal_distribution<double> noise(0.0, noise_sd);
  std::vector<double> y;
  for (double delay : d) {
    double v = 1.0 / (1.0 + k * delay) + noise(rng);
    y.push_back(std::min(1.0, std::max(0.0, v)));
  }
  return dd::IndifferenceSeries(d, y);
}

// Small synthetic wide-format dataset exercising the whole pipeline.
inline dd::Dataset synthetic_dataset(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> lnk_dist(-9.0, -1.0);
  std::uniform_int_distribution<int> age_dist(21, 67);
  std::bernoulli_distribution male(0.6), smoker(0.5), inattentive(0.06);

  dd::Dataset ds;
  ds.delay_schedule = dd::default_delay_schedule();
  for (std::size_t i = 0; i < n; ++i) {
    const double k = std::exp(lnk_dist(rng));
    dd::ParticipantRecord rec{
        std::to_string(i + 1),
        static_cast<double>(age_dist(rng)),
        male(rng) ? "Male" : "Female",
        smoker(rng) ? "Yes" : "No",
        noisy_mazur_series(k, 0.04, rng),
        std::string(inattentive(rng) ? dd::kAttentionFailLevel
                                     : dd::kAttentionPassLevel),
        std::nullopt};
    rec.jb_viol_stored = dd::jb_screen(rec.series).jb_violated ? 1 : 0;
    ds.rows.push_back(std::move(rec));
  }
  return ds;
}

}  // namespace fixtures
