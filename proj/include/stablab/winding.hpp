#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stablab/linalg.hpp"
#include "stablab/relator.hpp"

namespace stablab {

enum class WindingMethod { spectral, sampled };

std::string to_string(WindingMethod m);

struct CurveSample {
  double r = 0.0;
  double arg = 0.0;
  double log_magnitude = 0.0;
};

/// Samples of gamma(r) = det(r R + (1 - r) 1) on [0, 1].
struct Curve {
  std::vector<CurveSample> samples;
  double total_arg_change = 0.0;
};

struct WindingResult {
  int wind = 0;
  WindingMethod method = WindingMethod::spectral;
  /// Sampled: minimum of log|gamma| over the samples. Spectral: a lower
  /// bound, the sum over eigenvalues of log dist(0, [1, lambda]).
  double min_log_magnitude = 0.0;
  std::size_t sample_count = 0;
  /// Winding before rounding to an integer.
  double raw_value = 0.0;
};

struct SamplingOptions {
  std::size_t initial_samples = 64;
  std::size_t max_samples = std::size_t{1} << 20;
};

/// Winding number from the eigenvalues of the unitary R(X):
/// (1/2pi) sum Arg(lambda_i). Requires a homogeneous relator, a unitary
/// tuple, and no eigenvalue within 1e-6 of -1.
WindingResult winding_spectral(const Word& w, const UnitaryTuple& t);

/// Same winding number from an adaptively refined sampling of gamma.
WindingResult winding_sampled(const Word& w, const UnitaryTuple& t, SamplingOptions opts = {});

/// Adaptive sampling of gamma for a given relator value. An interval is
/// bisected while its raw argument step is at least pi/2 or while it lies
/// in a valley of log|gamma| more than one nat below both outer neighbours.
/// A step near a whole turn is invisible to the argument test, so the
/// initial grid must resolve the curve to within pi per interval. Throws
/// CurveTouchesZero on a singular sample or an interval that can no longer
/// be split, and NumericalError when max_samples is exceeded.
Curve sample_curve(const CMatrix& relator_value, SamplingOptions opts = {});

/// ||R(X) - 1|| through the spectrum when R(X) is normal within 1e-8,
/// otherwise by power iteration.
double relator_defect(const CMatrix& relator_value);

enum class Verdict { certified_far, inconclusive };

std::string to_string(Verdict v);

struct ObstructionReport {
  Word relator;
  std::string relator_text;
  std::size_t dimension = 0;
  double defect = 0.0;
  /// Empty only when the curve is undefined and the defect is >= 1/2.
  std::optional<int> wind;
  /// Cross-check value; skipped when the spectral method found the curve
  /// through zero.
  std::optional<int> sampled_wind;
  long length = 0;
  long radius_num = 1;
  long radius_den = 2;
  double radius = 0.5;
  Verdict verdict = Verdict::inconclusive;
  WindingMethod method = WindingMethod::spectral;
  std::size_t samples = 0;
};

struct CertifyOptions {
  bool cross_check = false;
  SamplingOptions sampling;
};

/// Contrapositive of the winding obstruction: certified_far iff
/// ||R(X) - 1|| < 1/2 and wind != 0, in which case no tuple A with
/// R(A) = 1 has max_i ||X_i - A_i|| < 1/(2 L(R)).
ObstructionReport certify_obstruction(const Word& w, const UnitaryTuple& t, CertifyOptions opts = {});

}  // namespace stablab
