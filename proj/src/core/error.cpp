// Copyright 2026 The ccat Authors
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

#include "error.hpp"

namespace ccat {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::CompositionMismatch: return "CompositionMismatch";
    case ErrorCode::DaggerUnavailable: return "DaggerUnavailable";
    case ErrorCode::TraceShapeMismatch: return "TraceShapeMismatch";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::NoSuchMatch: return "NoSuchMatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotASemilattice: return "NotASemilattice";
    case ErrorCode::UnboundGenerator: return "UnboundGenerator";
    case ErrorCode::ConjUnavailable: return "ConjUnavailable";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::LexError: return "LexError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ResolveError: return "ResolveError";
    case ErrorCode::ModelError: return "ModelError";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace ccat
