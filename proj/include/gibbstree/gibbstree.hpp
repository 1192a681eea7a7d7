// Copyright 2026 The gibbstree Authors
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

#ifndef GIBBSTREE_GIBBSTREE_HPP_
#define GIBBSTREE_GIBBSTREE_HPP_

#include "gibbstree/combinatorics.hpp"
#include "gibbstree/ensembles.hpp"
#include "gibbstree/error.hpp"
#include "gibbstree/lattice.hpp"
#include "gibbstree/ldp_lab.hpp"
#include "gibbstree/log_real.hpp"
#include "gibbstree/parallel.hpp"
#include "gibbstree/partition.hpp"
#include "gibbstree/rate.hpp"
#include "gibbstree/rng.hpp"
#include "gibbstree/treegen.hpp"

#endif  // GIBBSTREE_GIBBSTREE_HPP_
