#pragma once

#include "exotic/bundle.hpp"
#include "exotic/division_algebra.hpp"
#include "exotic/draw.hpp"
#include "exotic/errors.hpp"
#include "exotic/orbit.hpp"
#include "exotic/random.hpp"
#include "exotic/symmetry.hpp"
