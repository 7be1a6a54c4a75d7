#include "szego/common.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace szego {

SignedLog SignedLog::zero() {
  return {-std::numeric_limits<double>::infinity(), cplx(1.0, 0.0)};
}

SignedLog SignedLog::from(cplx z) {
  double a = std::abs(z);
  if (!std::isfinite(a)) throw ValidationError("non-finite value in SignedLog");
  if (a == 0.0) return zero();
  return {std::log(a), z / a};
}

SignedLog SignedLog::from_log(cplx log_z) {
  return {log_z.real(), std::polar(1.0, log_z.imag())};
}

bool SignedLog::is_zero() const { return std::isinf(log_abs) && log_abs < 0; }

cplx SignedLog::value() const {
  if (is_zero()) return 0.0;
  return std::exp(log_abs) * phase;
}

cplx SignedLog::log() const { return {log_abs, std::arg(phase)}; }

SignedLog SignedLog::operator*(const SignedLog& o) const {
  if (is_zero() || o.is_zero()) return zero();
  cplx p = phase * o.phase;
  return {log_abs + o.log_abs, p / std::abs(p)};
}

SignedLog SignedLog::operator/(const SignedLog& o) const {
  if (o.is_zero()) throw ValidationError("division by an exact zero");
  if (is_zero()) return zero();
  cplx p = phase / o.phase;
  return {log_abs - o.log_abs, p / std::abs(p)};
}

SignedLog SignedLog::pow(int k) const {
  if (k == 0) return {};
  if (is_zero()) return k > 0 ? zero() : throw ValidationError("negative power of zero");
  return {k * log_abs, std::polar(1.0, k * std::arg(phase))};
}

int size_cap() {
  const char* env = std::getenv("SZEGO_LAB_SIZE_CAP");
  if (env && *env) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0 && v < (1L << 30)) return static_cast<int>(v);
  }
  return 4096;
}

}  // namespace szego
