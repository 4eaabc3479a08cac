// Copyright 2026 The opsq Authors.
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

#ifndef OPSQ_OPSQ_HPP
#define OPSQ_OPSQ_HPP

#include "opsq/error.hpp"
#include "opsq/linalg.hpp"
#include "opsq/io.hpp"
#include "opsq/funclass.hpp"
#include "opsq/maps.hpp"
#include "opsq/jensen.hpp"
#include "opsq/instances.hpp"
#include "opsq/falsify.hpp"
#include "opsq/cli.hpp"

#endif  // OPSQ_OPSQ_HPP
