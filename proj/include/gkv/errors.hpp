#pragma once

#include <stdexcept>
#include <string>

namespace gkv {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define GKV_ERROR_TYPE(Name)                                  \
  struct Name : Error {                                       \
    explicit Name(const std::string& what) : Error(what) {}   \
  }

// exact algebra
GKV_ERROR_TYPE(DivisionByZero);
GKV_ERROR_TYPE(FieldMismatch);
GKV_ERROR_TYPE(BadVariable);
GKV_ERROR_TYPE(BadInput);

// quaternion models
GKV_ERROR_TYPE(AlgebraMismatch);
GKV_ERROR_TYPE(DegreeTooSmall);
GKV_ERROR_TYPE(BadWeight);
GKV_ERROR_TYPE(MissingRoot);
GKV_ERROR_TYPE(NonUniqueInvariant);

// finite-dimensional representations
GKV_ERROR_TYPE(SingularMatrix);
GKV_ERROR_TYPE(BadIndex);
GKV_ERROR_TYPE(NotTraceZero);
GKV_ERROR_TYPE(WeightMismatch);

// archimedean modules
GKV_ERROR_TYPE(BadGenerator);
GKV_ERROR_TYPE(FormulaMismatch);
GKV_ERROR_TYPE(BadLevel);
GKV_ERROR_TYPE(InternalError);
GKV_ERROR_TYPE(PVCheckFailed);

// local arithmetic
GKV_ERROR_TYPE(PoleAtS);
GKV_ERROR_TYPE(BadConductorShift);
GKV_ERROR_TYPE(TruncationTooSmall);

// periods and curves
GKV_ERROR_TYPE(BadModel);
GKV_ERROR_TYPE(NumericFailure);
GKV_ERROR_TYPE(NotCoprime);
GKV_ERROR_TYPE(HypothesisViolated);
GKV_ERROR_TYPE(SearchExhausted);
GKV_ERROR_TYPE(DegenerateTwist);

#undef GKV_ERROR_TYPE

}  // namespace gkv
