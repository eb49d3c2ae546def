#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pcalc {

/// Exact element of Q(i): re + im*i with arbitrary precision rationals.
/// GMP keeps both parts canonical (positive denominators, lowest terms).
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long value) : re_(value) {}  // NOLINT(implicit)
  GaussRational(mpq_class re, mpq_class im = 0);

  /// re = num/den, canonicalised; den must be nonzero.
  static GaussRational fraction(long num, long den);
  static GaussRational imaginary_unit() { return GaussRational(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  /// re^2 + im^2.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  /// Throws DomainError on zero.
  GaussRational inverse() const;

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  GaussRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

  /// Text in the coefficient syntax: `a/b`, `a/b*i`, or `(a/b+c/d*i)`.
  std::string str() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRational& z);

/// Parses a standalone scalar in the coefficient syntax (also accepts plain
/// decimals such as `0.25`, converted exactly). Throws ParseError.
GaussRational parse_scalar(std::string_view text);

}  // namespace pcalc
