// This file is part of causaloop.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include <causaloop/census.hpp>
#include <causaloop/classify.hpp>
#include <causaloop/codec.hpp>
#include <causaloop/dsl.hpp>
#include <causaloop/error.hpp>
#include <causaloop/fixed_point.hpp>
#include <causaloop/graph.hpp>
#include <causaloop/induced.hpp>
#include <causaloop/sample.hpp>
#include <causaloop/structure.hpp>
#include <causaloop/suites.hpp>
#include <causaloop/verify.hpp>
