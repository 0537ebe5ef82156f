// Copyright 2026 The jsondst Authors.
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

#ifndef JSONDST_FILTER_H_
#define JSONDST_FILTER_H_

#include "jsondst/ontology.h"
#include "jsondst/payload.h"
#include "jsondst/update.h"

namespace jsondst {

// Prunes a system payload before it is shown to the user-side translation:
// `info` keeps only slots that `outcome` changed or that are entities;
// `ask_for` and `not_available` are dropped entirely. `outcome` must come
// from ApplySystemJson on this same payload.
SystemJson FilterSystemJson(const SystemJson& sys, const UpdateOutcome& outcome,
                            const Ontology& ontology);

}  // namespace jsondst

#endif  // JSONDST_FILTER_H_
