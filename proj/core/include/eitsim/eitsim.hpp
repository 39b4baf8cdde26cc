// Copyright 2026 The eitsim Authors
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

#include "eitsim/dynamics.hpp"
#include "eitsim/error.hpp"
#include "eitsim/gates.hpp"
#include "eitsim/hamiltonian.hpp"
#include "eitsim/lindblad.hpp"
#include "eitsim/model.hpp"
#include "eitsim/optics.hpp"
#include "eitsim/steadystate.hpp"
#include "eitsim/version.hpp"
