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

// Named check suites run against a model file.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "model_file.hpp"
#include "report.hpp"

namespace ccat {

enum class Suite { Scalars, Dagger, Cloning, Collapse, Deleting, Product, Teleport, All };

const char* suite_name(Suite s);
Suite parse_suite(const std::string& text);
std::vector<std::string> suite_names();

struct SuiteOptions {
  /// Candidate morphisms tried by naturality searches.
  std::size_t budget = 64;
  /// Random scalars and morphisms used by sampled checks.
  std::size_t samples = 20;
  std::uint64_t seed = 1;
};

/// Runs one suite. Raises Usage when the model file lacks what the suite
/// needs (a family, teleport branches); `All` skips such suites with a note.
CheckReport run_suite(Suite s, const ModelFile& f, const SuiteOptions& opt = {});

/// Qubit over complex rationals with the four Pauli branches.
ModelFile demo_teleport_model();

/// Derivation conclusions plus replay of every recorded step, with one note
/// per step.
CheckReport derivation_check(const DerivationReport& r);

}  // namespace ccat
