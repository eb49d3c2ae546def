#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "pcalc/diagonal.hpp"

namespace pcalc {

using Complex = std::complex<double>;

struct TrackOptions {
  double tolerance = 1e-12;      ///< Newton residual (max-norm of the curl field)
  double jet_tolerance = 1e-6;
  int max_iterations = 50;
  double initial_step = 1e-2;
  double min_step = 1e-6;
  double radius = 1.0;           ///< largest admissible |t|
};

/// Pushforward of a generic numeric diagonal structure along a path of
/// elementary automorphisms whose data may involve the parameter.
class DeformationFamily {
 public:
  /// `path` data must live in family_table(base, parameter); empty path is the
  /// constant family. Throws DomainError for a non-numeric or non-generic
  /// base, or odd n.
  DeformationFamily(DiagonalSpec base, std::vector<ElementaryAutomorphism> path, std::string parameter = "t");

  /// Coordinates of the base plus the single parameter.
  static TablePtr family_table(const DiagonalSpec& base, const std::string& parameter);

  const DiagonalSpec& base() const { return base_; }
  const std::string& parameter() const { return parameter_; }
  const TablePtr& table() const { return table_; }
  const std::vector<ElementaryAutomorphism>& path() const { return path_; }
  const Automorphism& automorphism() const { return phi_; }
  /// Pi_t as an exact bivector in table().
  const Multivector& bivector() const { return pi_t_; }
  /// D Pi_t for the standard volume form.
  const Multivector& curl_field() const { return curl_t_; }
  /// Exact [Pi_t, Pi_t], identically in t.
  Multivector jacobi() const { return schouten(pi_t_, pi_t_); }

  /// Slot vector (coordinates then parameter) for double evaluation.
  std::vector<Complex> slots(std::span<const Complex> point, Complex t) const;

 private:
  DiagonalSpec base_;
  std::vector<ElementaryAutomorphism> path_;
  std::string parameter_;
  TablePtr table_;
  Automorphism phi_;
  Multivector pi_t_;
  Multivector curl_t_;
};

struct TrackResult {
  Complex t;
  std::vector<Complex> gamma;
  double residual = 0;
  double jet0 = 0;
  double jet1 = 0;
  int newton_iters = 0;       ///< total over the continuation
  int continuation_steps = 0;
  double lipschitz = 0;       ///< max |dgamma| / |dt| seen along the path

  bool certified(const TrackOptions& o) const {
    return residual <= o.tolerance && jet0 <= o.jet_tolerance && jet1 <= o.jet_tolerance;
  }
};

/// Continuation from gamma(0) = 0 along the segment [0, t] with Newton
/// corrections on the curl field. Throws TrackingError("left basin; reduce
/// step") once the step would drop below min_step and
/// TrackingError("non-simple singularity") on a singular Jacobian.
TrackResult track_degenerate_point(const DeformationFamily& family, Complex t, const TrackOptions& options = {});

/// Coefficients of every blade of A's degree, in blade order, at the slot
/// vector (coordinates then parameters).
std::vector<Complex> evaluate_float(const Multivector& a, std::span<const Complex> slots);

/// Least k <= r such that a k-th Taylor coefficient of some coefficient of A
/// at the point exceeds tol in modulus; r + 1 if none does. Requires r <= 3.
int jet_vanishing(const Multivector& a, std::span<const Complex> slots, int r, double tol = 1e-6);

/// Max-norm of the curl of A for the volume form u dx1^...^dxn at the point.
double curl_norm(const Multivector& a, const Polynomial& unit, std::span<const Complex> slots);

/// Exact common zeros of Pi and D Pi on the grid {-1, -1 + 1/s, ..., 1}^n.
std::vector<std::vector<GaussRational>> scan_degenerate_points(const PoissonStructure& pi, unsigned steps_per_unit,
                                                               const Assignment& params = {});

}  // namespace pcalc
