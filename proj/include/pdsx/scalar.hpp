#pragma once

// Scalar backends for matrices and coefficient functions.
//
// Gaussian is an exact complex number with rational real and imaginary
// parts. std::complex<double> is the floating backend. ScalarTraits gives
// the handful of operations the generic code needs from either.

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>

namespace pdsx {

class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long re) : re_(re) {}  // NOLINT: implicit from integers is convenient in tables
  Gaussian(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static Gaussian i() { return {0, 1}; }
  static Gaussian ratio(long num, long den) { return Gaussian(mpq_class(num, den)); }

  // Accepts "p/q", "p/q+r/s i", "r/s i", "-i", "3-2i" and similar.
  static Gaussian parse(std::string_view text);

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  Gaussian conj() const { return {re_, -im_}; }
  mpq_class norm2() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
  double abs() const { return std::abs(to_complex()); }

  std::string to_string() const;

  Gaussian& operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Gaussian> {
  static constexpr bool exact = true;
  static Gaussian zero() { return {}; }
  static Gaussian one() { return Gaussian(1); }
  static bool is_zero(const Gaussian& z) { return z.is_zero(); }
  static Gaussian conj(const Gaussian& z) { return z.conj(); }
  static double magnitude(const Gaussian& z) { return z.abs(); }
  static Gaussian from_exact(const Gaussian& z) { return z; }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static constexpr bool exact = false;
  static std::complex<double> zero() { return {}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static bool is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }
  static std::complex<double> conj(const std::complex<double>& z) { return std::conj(z); }
  static double magnitude(const std::complex<double>& z) { return std::abs(z); }
  static std::complex<double> from_exact(const Gaussian& z) { return z.to_complex(); }
};

using Complex = std::complex<double>;

}  // namespace pdsx
