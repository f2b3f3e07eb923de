// Copyright 2026 The gqd Authors
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
#pragma once

#include "gqd/common.hpp"
#include "gqd/contraction.hpp"
#include "gqd/estimator.hpp"
#include "gqd/gqd_core.hpp"
#include "gqd/moment_audit.hpp"
#include "gqd/moments.hpp"
#include "gqd/pairing.hpp"
#include "gqd/qst_baseline.hpp"
#include "gqd/statekit.hpp"
