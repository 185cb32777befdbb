// SPDX-License-Identifier: Apache-2.0
//
// lisproc: distributed uplink processing for panelized large intelligent surfaces
// Copyright (C) 2026 The lisproc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef LISPROC_LISPROC_HPP
#define LISPROC_LISPROC_HPP

#include "capacity.hpp"
#include "config.hpp"
#include "cost.hpp"
#include "experiments.hpp"
#include "frontend.hpp"
#include "numerics.hpp"
#include "rng.hpp"
#include "scenario.hpp"
#include "tree.hpp"

#endif // LISPROC_LISPROC_HPP
