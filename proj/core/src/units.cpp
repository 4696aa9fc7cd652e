#include "sfncov/units.hpp"

#include <cmath>

namespace sfncov {

double db_to_linear(double db) {
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear) {
    return 10.0 * std::log10(linear);
}

double dbm_to_watts(double dbm) {
    return std::pow(10.0, dbm / 10.0) * 1e-3;
}

double watts_to_dbm(double watts) {
    return 10.0 * std::log10(watts * 1e3);
}

double thermal_noise_w(double temperature_k, double bandwidth_hz) {
    return boltzmann_j_per_k * temperature_k * bandwidth_hz;
}

} // namespace sfncov
