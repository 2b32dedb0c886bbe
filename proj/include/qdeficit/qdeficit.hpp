// Copyright 2026 The qdeficit Authors
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

#include "qdeficit/correlations.hpp"
#include "qdeficit/decoherence.hpp"
#include "qdeficit/errors.hpp"
#include "qdeficit/matrix.hpp"
#include "qdeficit/measurement.hpp"
#include "qdeficit/nelder_mead.hpp"
#include "qdeficit/state_family.hpp"
#include "qdeficit/sweep.hpp"
#include "qdeficit/verify.hpp"
