#include "spantube/tolerance.h"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace spantube {

namespace {

double initial_tolerance() {
  const char* env = std::getenv("SPANTUBE_TOLERANCE");
  if (env == nullptr || *env == '\0') return 1e-9;
  char* end = nullptr;
  double value = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(value > 0.0)) {
    throw std::invalid_argument(std::string("SPANTUBE_TOLERANCE must be a positive number, got '") +
                                env + "'");
  }
  return value;
}

std::atomic<double>& storage() {
  static std::atomic<double> tau{initial_tolerance()};
  return tau;
}

}  // namespace

double tolerance() { return storage().load(std::memory_order_relaxed); }

void set_tolerance(double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tolerance must be positive");
  storage().store(tau, std::memory_order_relaxed);
}

}  // namespace spantube
