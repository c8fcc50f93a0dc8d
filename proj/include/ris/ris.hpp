// SPDX-License-Identifier: Apache-2.0
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

#ifndef RIS_SIM_RIS_HPP
#define RIS_SIM_RIS_HPP

#include "asymptotics.hpp"
#include "channel_model.hpp"
#include "config.hpp"
#include "harness.hpp"
#include "phase_optimizer.hpp"
#include "power_allocation.hpp"
#include "ris_reflection.hpp"
#include "rng.hpp"
#include "schedulers.hpp"
#include "types.hpp"
#include "validation.hpp"

#endif
