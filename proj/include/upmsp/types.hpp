#ifndef UPMSP_TYPES_HPP
#define UPMSP_TYPES_HPP

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace upmsp {

/// Integer time units. Processing, setup, completion and makespan all share it.
using Time = std::int64_t;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using TimeMatrix = Matrix<Time>;

/// One continuous key per job, each in [0, m). The search-space point of
/// every population-based method.
template <typename Scalar = double>
using KeyVectorT = Vector<Scalar>;
using KeyVector = KeyVectorT<double>;

/// Every random stream in the library.
using Rng = std::mt19937_64;

}  // namespace upmsp

#endif  // UPMSP_TYPES_HPP
