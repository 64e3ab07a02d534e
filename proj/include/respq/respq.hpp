// Copyright 2026 The respq Authors
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

// Convenience umbrella: the whole library in one include.

#pragma once

#include "respq/ansatz.hpp"
#include "respq/circuit.hpp"
#include "respq/config.hpp"
#include "respq/density.hpp"
#include "respq/mitigation.hpp"
#include "respq/optimize.hpp"
#include "respq/oracle.hpp"
#include "respq/pauli.hpp"
#include "respq/rng.hpp"
#include "respq/runner.hpp"
#include "respq/sampling.hpp"
#include "respq/solver.hpp"
#include "respq/spectrum.hpp"
#include "respq/stateprep.hpp"
#include "respq/statevector.hpp"
#include "respq/version.hpp"
