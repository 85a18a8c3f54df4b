#pragma once

#include <complex>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigmap/rational.hpp"

namespace sigmap {

// Reports must be byte-stable across runs, so all float formatting funnels
// through snprintf with fixed format strings; never locale- or stream-state
// dependent.

using json = nlohmann::ordered_json;

/// Round-trip exact decimal form of a double.
inline std::string decimal_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

/// Shorter form for human-facing tables and CSV metrics.
inline std::string metric_string(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::string(buf);
}

inline json value_json(double x) { return decimal_string(x); }
inline json value_json(const std::complex<double>& z) {
  return json::array({decimal_string(z.real()), decimal_string(z.imag())});
}
inline json value_json(const Rational& r) { return fraction_string(r); }

template <class S>
json vector_json(std::span<const S> v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(value_json(x));
  return out;
}

template <class S>
json vector_json(const std::vector<S>& v) {
  return vector_json(std::span<const S>(v));
}

}  // namespace sigmap
