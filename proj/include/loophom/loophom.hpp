#pragma once

#include "loophom/bar_complex.hpp"
#include "loophom/duality_bracket.hpp"
#include "loophom/errors.hpp"
#include "loophom/graded_algebra.hpp"
#include "loophom/hochschild.hpp"
#include "loophom/linalg.hpp"
#include "loophom/pi1_oracle.hpp"
#include "loophom/rational.hpp"
