// Copyright 2026 The csdiv Authors
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

// Convenience header pulling in the whole public API.

#include "csdiv/compensated_sum.hpp"
#include "csdiv/divergence.hpp"
#include "csdiv/error.hpp"
#include "csdiv/pmf.hpp"
#include "csdiv/reduction.hpp"
#include "csdiv/rng.hpp"
#include "csdiv/serialization.hpp"
#include "csdiv/simplex_search.hpp"
#include "csdiv/triangle.hpp"
