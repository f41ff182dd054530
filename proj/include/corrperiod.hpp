/* Copyright 2026 The corrperiod Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef CORRPERIOD_CORRPERIOD_HPP_
#define CORRPERIOD_CORRPERIOD_HPP_

#include "corrperiod/baselines.hpp"
#include "corrperiod/benchkit.hpp"
#include "corrperiod/binning.hpp"
#include "corrperiod/candidate.hpp"
#include "corrperiod/error.hpp"
#include "corrperiod/information.hpp"
#include "corrperiod/kernel.hpp"
#include "corrperiod/lightcurve.hpp"
#include "corrperiod/pipeline.hpp"
#include "corrperiod/report.hpp"
#include "corrperiod/slotted.hpp"
#include "corrperiod/spectral.hpp"
#include "corrperiod/synthetic.hpp"

#endif  // CORRPERIOD_CORRPERIOD_HPP_
