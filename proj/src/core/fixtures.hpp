// Copyright 2026 the bkcurv developers
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

// Named reference configurations with known closed-form behaviour, usable
// from scenarios and the command line by name.

#ifndef BKCURV_FIXTURES_HPP
#define BKCURV_FIXTURES_HPP

#include <string>
#include <vector>

#include "jets.hpp"
#include "motion.hpp"
#include "normfam.hpp"
#include "realtoy.hpp"

namespace bk {

struct FixtureDef {
  std::string name;
  std::string kind;  // domain | norm | motion | toy | weight
  std::string summary;
  // domain: rho/phi sources and dimensions
  std::string rho;
  std::string phi;
  int m = 1;
  int n = 1;
  // norm: row-major n x n entry sources
  std::vector<std::string> entries;
  // motion: affine coefficient a(t), or a general f with optional inverse
  std::string motion_a;
  std::string motion_f;
  std::string motion_finv;
  // toy: interval endpoints a(t), b(t)
  std::string toy_a;
  std::string toy_b;
  // weight: integrand exponent phi(t, x) for convexity scans
  std::string weight;
};

const std::vector<FixtureDef>& fixture_catalog();

// Returns nullptr when the name is unknown.
const FixtureDef* find_fixture(const std::string& name);

// Builders; each throws Error{Invalid} when the fixture has the wrong kind.
DomainFamily fixture_family(const FixtureDef& fx);
NormFamily fixture_norm(const FixtureDef& fx);
Motion fixture_motion(const FixtureDef& fx);
ToyFamily fixture_toy(const FixtureDef& fx);
ExprP fixture_weight(const FixtureDef& fx);

}  // namespace bk

#endif
