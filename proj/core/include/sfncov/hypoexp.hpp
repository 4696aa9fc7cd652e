#pragma once

#include "sfncov/scenario.hpp"

namespace sfncov {

// CDF at z of a sum of independent exponentials with the given means and
// multiplicities. Handles repeated means exactly through the derivative
// terms of the partial-fraction expansion. z <= 0 returns 0.
double hypoexp_cdf(const HypoexpSpec& spec, double z);

} // namespace sfncov
