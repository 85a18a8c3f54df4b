#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "sigmap/prob.hpp"
#include "sigmap/rational.hpp"

namespace sigmap {

inline constexpr std::size_t kSignVectorLimit = 25;

/// All 2^n vectors in {-1, +1}^n, canonical order: index i maps bit k to -1
/// when set. Single-pass input range; the buffer is reused between steps.
class SignVectors {
 public:
  explicit SignVectors(std::size_t n) : n_(n) {
    if (n == 0 || n > kSignVectorLimit)
      throw std::invalid_argument("SignVectors: n out of range (1..25)");
  }

  class iterator {
   public:
    iterator(std::size_t n, std::uint64_t index) : n_(n), index_(index), buf_(n) { decode(); }

    const std::vector<double>& operator*() const { return buf_; }
    iterator& operator++() {
      ++index_;
      decode();
      return *this;
    }
    bool operator!=(const iterator& other) const { return index_ != other.index_; }

   private:
    void decode() {
      for (std::size_t k = 0; k < n_; ++k)
        buf_[k] = (index_ >> k) & 1u ? -1.0 : 1.0;
    }
    std::size_t n_;
    std::uint64_t index_;
    std::vector<double> buf_;
  };

  iterator begin() const { return iterator(n_, 0); }
  iterator end() const { return iterator(n_, std::uint64_t{1} << n_); }
  std::uint64_t count() const { return std::uint64_t{1} << n_; }

 private:
  std::size_t n_;
};

/// Callback form for hot loops: fn(std::span<const double>) per sign vector.
template <class F>
void for_each_sign_vector(std::size_t n, F&& fn) {
  if (n == 0 || n > kSignVectorLimit)
    throw std::invalid_argument("for_each_sign_vector: n out of range (1..25)");
  std::vector<double> buf(n, 1.0);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 0; i < total; ++i) {
    for (std::size_t k = 0; k < n; ++k) buf[k] = (i >> k) & 1u ? -1.0 : 1.0;
    fn(std::span<const double>(buf));
  }
}

/// A mean-zero extreme point of the unit ball section {f : ||f||_inf <= 1,
/// Ef = 0}: coordinates take values in {+1, -1, c} with at most one value c
/// strictly inside (-1, 1), forced by the mean-zero constraint.
struct MeanZeroExtreme {
  std::vector<Rational> values;
  std::optional<Rational> c; // engaged iff some atom carries the inner value
};

inline constexpr std::size_t kExtremeAtomLimit = 20;

/// Enumerate the mean-zero extreme points of the unit ball over a rational
/// measure by assigning every atom to one of the classes {+1, -1, c}:
///  - c-class with positive mass: c = (mass(-1) - mass(+1)) / mass(c),
///    emitted only when -1 < c < 1 strictly;
///  - c-class empty or of zero mass: emitted when the +/-1 masses balance
///    exactly (null c-atoms get value 0, irrelevant to the measure).
/// fn receives each point; enumeration order is the canonical base-3 order of
/// class assignments (digit 0 -> +1, 1 -> -1, 2 -> c).
template <class F>
void for_each_extreme_mean_zero(const MeasureQ& mu, F&& fn) {
  const std::size_t n = mu.size();
  if (n > kExtremeAtomLimit)
    throw std::invalid_argument("for_each_extreme_mean_zero: atom count exceeds 20");
  std::vector<int> cls(n, 0);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;

  MeanZeroExtreme point;
  point.values.resize(n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rest = code;
    Rational mass_plus, mass_minus, mass_c;
    bool has_c_atom = false;
    for (std::size_t i = 0; i < n; ++i) {
      cls[i] = static_cast<int>(rest % 3);
      rest /= 3;
      if (cls[i] == 0) mass_plus += mu[i];
      else if (cls[i] == 1) mass_minus += mu[i];
      else {
        mass_c += mu[i];
        has_c_atom = true;
      }
    }
    Rational c;
    if (mass_c != 0) {
      c = (mass_minus - mass_plus) / mass_c;
      if (!(c > -1 && c < 1)) continue;
    } else {
      if (mass_plus != mass_minus) continue;
      c = 0;
    }
    for (std::size_t i = 0; i < n; ++i)
      point.values[i] = cls[i] == 0 ? Rational(1) : cls[i] == 1 ? Rational(-1) : c;
    point.c = has_c_atom ? std::optional<Rational>(c) : std::nullopt;
    fn(static_cast<const MeanZeroExtreme&>(point));
  }
}

inline std::vector<MeanZeroExtreme> extreme_mean_zero_points(const MeasureQ& mu) {
  std::vector<MeanZeroExtreme> out;
  for_each_extreme_mean_zero(mu, [&](const MeanZeroExtreme& p) { out.push_back(p); });
  return out;
}

}  // namespace sigmap
