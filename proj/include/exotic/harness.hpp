#pragma once

#include "exotic/harness/parity.hpp"
#include "exotic/harness/report.hpp"
#include "exotic/harness/sampling.hpp"
#include "exotic/harness/suites.hpp"
#include "exotic/harness/sweep.hpp"
