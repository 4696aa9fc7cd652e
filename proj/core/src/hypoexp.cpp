#include "sfncov/hypoexp.hpp"

#include <cmath>

#include "survival_kernel.hpp"

namespace sfncov {

double hypoexp_cdf(const HypoexpSpec& spec, double z) {
    detail::validate_spec(spec);
    if (!(z > 0.0)) return 0.0;
    const double survival = detail::survival_sum(spec, [&](int k, int n) {
        const double u = z / spec.means[k];
        if (u > 700.0) return 0.0;  // u^n e^-u underflows well before this
        return detail::ipow(u, n) * std::exp(-u);
    });
    return detail::clamp_probability(1.0 - survival, "hypoexp_cdf");
}

} // namespace sfncov
