// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcorr {

enum class ErrorKind {
  NotHermitian,
  NegativeEigenvalue,
  DimensionMismatch,
  NotDensity,
  OutOfRange,
  NotProbability,
  NotProjective,
  NotResolutionOfIdentity,
  UnsupportedDimension,
  SingularBasis,
  DualsDoNotResolveIdentity,
  NotRankOne,
  NoFeasibleWitness,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotDensity: return "NotDensity";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotProbability: return "NotProbability";
    case ErrorKind::NotProjective: return "NotProjective";
    case ErrorKind::NotResolutionOfIdentity: return "NotResolutionOfIdentity";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::SingularBasis: return "SingularBasis";
    case ErrorKind::DualsDoNotResolveIdentity: return "DualsDoNotResolveIdentity";
    case ErrorKind::NotRankOne: return "NotRankOne";
    case ErrorKind::NoFeasibleWitness: return "NoFeasibleWitness";
  }
  return "Unknown";
}

// All library failures are reported through this one exception type; the
// kind() tag lets callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Tolerance hierarchy: exact-algebra checks, validation, iterative optimizers.
namespace tol {
inline constexpr double kConstruction = 1e-14;
inline constexpr double kValidation = 1e-10;
inline constexpr double kOptimization = 1e-6;
inline constexpr double kSupportCutoff = 1e-10;
inline constexpr double kSupportWeight = 1e-8;
inline constexpr double kZeroProbability = 1e-12;
}  // namespace tol

}  // namespace qcorr
