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

#include "qcorr/entropy.hpp"
#include "qcorr/error.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/maps.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/measures.hpp"
#include "qcorr/projective.hpp"
#include "qcorr/quantumness.hpp"
#include "qcorr/states.hpp"
