#include "dd/models.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "dd/errors.hpp"

namespace dd {
namespace {

void require_finite_nonneg(double k, const char* name) {
  if (!std::isfinite(k) || k < 0.0)
    throw invalid_input(std::string(name) + ": k must be finite and >= 0, got " +
                        std::to_string(k));
}

void require_delay(double delay) {
  if (!std::isfinite(delay) || delay < 0.0)
    throw invalid_input("predict: delay must be finite and >= 0, got " +
                        std::to_string(delay));
}

}  // namespace

MazurParams::MazurParams(double k) : k(k) {
  require_finite_nonneg(k, "MazurParams");
}

RachlinParams::RachlinParams(double k, double s) : k(k), s(s) {
  require_finite_nonneg(k, "RachlinParams");
  if (!std::isfinite(s) || s <= 0.0)
    throw invalid_input("RachlinParams: s must be finite and > 0, got " +
                        std::to_string(s));
}

double predict_mazur(const MazurParams& params, double delay) {
  require_delay(delay);
  return 1.0 / (1.0 + params.k * delay);
}

double predict_rachlin(const RachlinParams& params, double delay) {
  require_delay(delay);
  if (delay == 0.0) return 1.0;  // avoids 0^s for fractional s
  const double pow_ds = std::exp(params.s * std::log(delay));
  return 1.0 / (1.0 + params.k * pow_ds);
}

double ed50_mazur(const MazurParams& params) {
  if (params.k == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / params.k;
}

double ed50_rachlin(const RachlinParams& params) {
  if (params.k == 0.0) return std::numeric_limits<double>::infinity();
  return std::pow(1.0 / params.k, 1.0 / params.s);
}

}  // namespace dd
