#include "stablab/winding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "stablab/error.hpp"

namespace stablab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kNearMinusOne = 1e-6;
constexpr double kSpectralResidual = 1e-6;
constexpr double kSampledResidual = 1e-3;
constexpr double kValleyDepth = 1.0;
constexpr double kNormalTol = 1e-8;

double wrap(double d) { return std::remainder(d, kTwoPi); }

CMatrix checked_relator_value(const Word& w, const UnitaryTuple& t) {
  if (!is_homogeneous(w)) throw DomainError("winding number requires a homogeneous relator");
  t.validate();
  return evaluate_word(w, t);
}

// log of the distance from 0 to the segment [1, lambda].
double log_segment_distance(cplx lambda) {
  const cplx d = lambda - 1.0;
  const double dd = std::norm(d);
  double r = dd == 0.0 ? 0.0 : std::clamp(-d.real() / dd, 0.0, 1.0);
  return std::log(std::abs(1.0 + r * d));
}

}  // namespace

std::string to_string(WindingMethod m) { return m == WindingMethod::spectral ? "spectral" : "sampled"; }

std::string to_string(Verdict v) { return v == Verdict::certified_far ? "certified_far" : "inconclusive"; }

WindingResult winding_spectral(const Word& w, const UnitaryTuple& t) {
  const CMatrix value = checked_relator_value(w, t);
  const std::vector<cplx> eig = eig_normal(value, kNormalTol);
  double arg_sum = 0.0;
  double log_bound = 0.0;
  for (cplx lambda : eig) {
    if (std::abs(lambda + 1.0) < kNearMinusOne) {
      throw CurveTouchesZero("relator value has an eigenvalue within 1e-6 of -1; gamma passes near 0 at r = 1/2");
    }
    arg_sum += principal_arg(lambda);
    log_bound += log_segment_distance(lambda);
  }
  WindingResult out;
  out.method = WindingMethod::spectral;
  out.raw_value = arg_sum / kTwoPi;
  out.wind = static_cast<int>(std::lround(out.raw_value));
  out.min_log_magnitude = log_bound;
  out.sample_count = 0;
  if (std::abs(out.raw_value - out.wind) > kSpectralResidual) {
    throw NumericalError("spectral winding " + std::to_string(out.raw_value) + " is not near an integer");
  }
  return out;
}

Curve sample_curve(const CMatrix& relator_value, SamplingOptions opts) {
  if (opts.initial_samples < 2) throw DomainError("need at least two initial samples");
  if (opts.max_samples < opts.initial_samples) throw DomainError("max_samples below initial_samples");
  const std::size_t n = relator_value.dim();
  std::size_t evaluations = 0;

  auto eval = [&](double r) {
    if (++evaluations > opts.max_samples) {
      throw NumericalError("curve unresolved: more than " + std::to_string(opts.max_samples) + " samples needed");
    }
    CMatrix m = relator_value * cplx{r, 0.0};
    for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.0 - r;
    const ArgDet ad = arg_det(m);
    return CurveSample{r, ad.arg, ad.log_magnitude};
  };

  std::vector<CurveSample> samples;
  samples.reserve(opts.initial_samples);
  const double steps = static_cast<double>(opts.initial_samples - 1);
  for (std::size_t i = 0; i < opts.initial_samples; ++i) {
    const double r = i + 1 == opts.initial_samples ? 1.0 : static_cast<double>(i) / steps;
    samples.push_back(eval(r));
  }

  // An interval is split when its argument step reaches pi/2, or when it
  // sits in a valley of log|gamma| more than one nat below both outer
  // neighbours (a zero of even multiplicity leaves the argument unchanged).
  auto needs_split = [&](std::size_t i) {
    const CurveSample& a = samples[i];
    const CurveSample& b = samples[i + 1];
    if (std::abs(wrap(b.arg - a.arg)) >= kHalfPi) return true;
    const double low = std::min(a.log_magnitude, b.log_magnitude);
    double outer = std::numeric_limits<double>::infinity();
    if (i > 0) outer = samples[i - 1].log_magnitude;
    if (i + 2 < samples.size()) outer = std::min(outer, samples[i + 2].log_magnitude);
    return std::isfinite(outer) && low < outer - kValleyDepth;
  };

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<CurveSample> next;
    next.reserve(samples.size());
    next.push_back(samples.front());
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      if (needs_split(i)) {
        const double mid = 0.5 * (samples[i].r + samples[i + 1].r);
        if (!(mid > samples[i].r && mid < samples[i + 1].r)) {
          throw CurveTouchesZero("gamma is unresolved near r = " + std::to_string(mid) +
                                 " at floating-point resolution; it passes through 0");
        }
        next.push_back(eval(mid));
        changed = true;
      }
      next.push_back(samples[i + 1]);
    }
    samples = std::move(next);
  }

  Curve curve;
  for (std::size_t i = 1; i < samples.size(); ++i) curve.total_arg_change += wrap(samples[i].arg - samples[i - 1].arg);
  curve.samples = std::move(samples);
  return curve;
}

WindingResult winding_sampled(const Word& w, const UnitaryTuple& t, SamplingOptions opts) {
  const CMatrix value = checked_relator_value(w, t);
  const Curve curve = sample_curve(value, opts);
  WindingResult out;
  out.method = WindingMethod::sampled;
  out.raw_value = curve.total_arg_change / kTwoPi;
  out.wind = static_cast<int>(std::lround(out.raw_value));
  out.sample_count = curve.samples.size();
  out.min_log_magnitude = std::numeric_limits<double>::infinity();
  for (const auto& s : curve.samples) out.min_log_magnitude = std::min(out.min_log_magnitude, s.log_magnitude);
  if (std::abs(out.raw_value - out.wind) >= kSampledResidual) {
    throw NumericalError("sampled winding " + std::to_string(out.raw_value) + " is not near an integer");
  }
  return out;
}

double relator_defect(const CMatrix& relator_value) {
  if (normality_defect(relator_value) <= kNormalTol) {
    double d = 0.0;
    for (cplx lambda : eig_normal(relator_value, kNormalTol)) d = std::max(d, std::abs(lambda - 1.0));
    return d;
  }
  return operator_norm_power(relator_value - CMatrix::identity(relator_value.dim()));
}

ObstructionReport certify_obstruction(const Word& w, const UnitaryTuple& t, CertifyOptions opts) {
  const CMatrix value = checked_relator_value(w, t);
  ObstructionReport rep;
  rep.relator = w;
  rep.relator_text = to_string(w, t.labels);
  rep.dimension = t.dim();
  rep.defect = relator_defect(value);
  rep.length = relator_length(w);
  rep.radius_num = 1;
  rep.radius_den = 2 * rep.length;
  rep.radius = 1.0 / static_cast<double>(rep.radius_den);
  rep.method = WindingMethod::spectral;

  const bool small_defect = rep.defect < 0.5;
  try {
    rep.wind = winding_spectral(w, t).wind;
  } catch (const CurveTouchesZero&) {
    if (small_defect) throw;
  }
  if (opts.cross_check && rep.wind) {
    try {
      const WindingResult s = winding_sampled(w, t, opts.sampling);
      rep.sampled_wind = s.wind;
      rep.samples = s.sample_count;
    } catch (const CurveTouchesZero&) {
      if (small_defect) throw;
    }
    if (small_defect && rep.wind != rep.sampled_wind) {
      throw NumericalError("spectral and sampled winding numbers disagree");
    }
  }
  rep.verdict = small_defect && rep.wind && *rep.wind != 0 ? Verdict::certified_far : Verdict::inconclusive;
  return rep;
}

}  // namespace stablab
