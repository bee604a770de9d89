#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace smpforge {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Columns of a DiffusionMat are the per-noise diffusion vectors g_i(t,x,u),
// so g has shape n_modes x n_noise throughout.
using DiffusionMat = Eigen::MatrixXd;

inline void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

inline void require_domain(bool cond, const std::string& what) {
    if (!cond) throw std::domain_error(what);
}

inline bool all_finite(const Eigen::Ref<const Mat>& m) {
    return m.allFinite();
}

} // namespace smpforge
