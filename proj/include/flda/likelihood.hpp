#pragma once

#include "flda/counts.hpp"

namespace flda {

/// Collapsed joint log p(w, z):
///
///   I*[lnG(T a) - T lnG(a)] + sum_d [sum_t lnG(n_td + a) - lnG(n_d + T a)]
/// + T*[lnG(J b) - J lnG(b)] + sum_t [sum_w lnG(n_tw + b) - lnG(n_t + J b)]
///
/// evaluated over the sparse supports only; topics/words with zero count
/// contribute the constant lnG(a) / lnG(b) terms, which fold into the closed
/// forms below. An empty model comes out exactly 0.
double joint_log_likelihood(const CountModel& model);

}  // namespace flda
