#pragma once

#include "grf/error.hpp"
#include "grf/linalg.hpp"
#include "grf/pattern_module.hpp"
#include "grf/cech.hpp"
#include "grf/frobenius.hpp"
#include "grf/structure.hpp"
#include "grf/oracle.hpp"
