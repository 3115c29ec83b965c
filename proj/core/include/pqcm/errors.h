// Copyright 2026 The pqcm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PQCM_ERRORS_H
#define PQCM_ERRORS_H

#include <stdexcept>
#include <string>

namespace pqcm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

#define PQCM_DECLARE_ERROR(NAME)            \
    class NAME : public Error {             \
       public:                              \
        using Error::Error;                 \
    }

PQCM_DECLARE_ERROR(DimensionError);
PQCM_DECLARE_ERROR(CapacityError);
PQCM_DECLARE_ERROR(EmptyInputError);
PQCM_DECLARE_ERROR(HermiticityError);
PQCM_DECLARE_ERROR(BasisError);
PQCM_DECLARE_ERROR(SpanError);
PQCM_DECLARE_ERROR(RankError);
PQCM_DECLARE_ERROR(ConditioningError);
PQCM_DECLARE_ERROR(UnsupportedInputError);
PQCM_DECLARE_ERROR(LabelError);
PQCM_DECLARE_ERROR(ConfigError);

#undef PQCM_DECLARE_ERROR

/// Raised when requested efficiencies admit no trace-non-increasing cloner.
/// Carries the minimum eigenvalue of the feasibility matrix so callers can
/// report how far outside the feasible set the request was.
class FeasibilityError : public Error {
   public:
    FeasibilityError(const std::string &what, double min_eigenvalue);
    double min_eigenvalue() const noexcept {
        return min_eigenvalue_;
    }

   private:
    double min_eigenvalue_;
};

}  // namespace pqcm

#endif
