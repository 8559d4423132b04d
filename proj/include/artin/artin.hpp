// Copyright 2026 The artin-hhs Authors
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

#include "artin/blowup.hpp"
#include "artin/chhs.hpp"
#include "artin/classify.hpp"
#include "artin/common.hpp"
#include "artin/hyperbolicity.hpp"
#include "artin/labelled_graph.hpp"
#include "artin/presentation.hpp"
#include "artin/projection_systems.hpp"
#include "artin/random_model.hpp"
#include "artin/simple_graph.hpp"
