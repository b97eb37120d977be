// Copyright 2026 The mrqdc Authors
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

#include "mrqdc/nmr/compile.hpp"
#include "mrqdc/nmr/preparation.hpp"
#include "mrqdc/nmr/pulse.hpp"
#include "mrqdc/nmr/pulse_format.hpp"
#include "mrqdc/nmr/spectrum.hpp"
#include "mrqdc/nmr/spin_system.hpp"
#include "mrqdc/nmr/verify.hpp"
