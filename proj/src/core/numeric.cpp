#include "numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"

namespace freeinterp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::CapacityExceeded: return "CapacityExceeded";
    case ErrorCode::Underflow: return "Underflow";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NotRadial: return "NotRadial";
    case ErrorCode::ModeMismatch: return "ModeMismatch";
    case ErrorCode::ArcsOverlap: return "ArcsOverlap";
    case ErrorCode::DegenerateWeight: return "DegenerateWeight";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 40, rel_tol,
                                                                       &error);
}

}  // namespace freeinterp
