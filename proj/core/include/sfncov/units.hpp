#pragma once

namespace sfncov {

inline constexpr double boltzmann_j_per_k = 1.380649e-23;

double db_to_linear(double db);
double linear_to_db(double linear);
double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Thermal noise power k * T * bandwidth, in watts.
double thermal_noise_w(double temperature_k, double bandwidth_hz);

} // namespace sfncov
