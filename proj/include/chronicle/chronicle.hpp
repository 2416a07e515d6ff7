// Copyright 2026 The Chronicle Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHRONICLE_CHRONICLE_HPP
#define CHRONICLE_CHRONICLE_HPP

#include "chronicle/checks.hpp"
#include "chronicle/epr.hpp"
#include "chronicle/errors.hpp"
#include "chronicle/framework.hpp"
#include "chronicle/histories.hpp"
#include "chronicle/linalg.hpp"
#include "chronicle/measurement.hpp"
#include "chronicle/scenario.hpp"
#include "chronicle/version.hpp"

#endif  // CHRONICLE_CHRONICLE_HPP
