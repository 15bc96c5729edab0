// Copyright 2026 The qoracle Authors
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

// Convenience header pulling in the whole library.

#include "benchmark.hpp"
#include "circuit.hpp"
#include "cse.hpp"
#include "database.hpp"
#include "lowering.hpp"
#include "metrics.hpp"
#include "oracle.hpp"
#include "parity_network.hpp"
#include "polynomial.hpp"
#include "serialization.hpp"
#include "similarity.hpp"
#include "simulator.hpp"
#include "synthesis.hpp"
#include "truth_table.hpp"
#include "walsh.hpp"
