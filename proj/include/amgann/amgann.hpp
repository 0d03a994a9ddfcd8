#ifndef AMGANN_AMGANN_HPP
#define AMGANN_AMGANN_HPP

/// @file amgann.hpp
/// @brief Umbrella header pulling in every module.

#include "amgann/amg/cf_split.hpp"
#include "amgann/amg/hierarchy.hpp"
#include "amgann/amg/interpolation.hpp"
#include "amgann/amg/smoother.hpp"
#include "amgann/amg/strong_graph.hpp"
#include "amgann/ann/adam.hpp"
#include "amgann/ann/config.hpp"
#include "amgann/ann/loss.hpp"
#include "amgann/ann/model_io.hpp"
#include "amgann/ann/network.hpp"
#include "amgann/ann/tensor.hpp"
#include "amgann/ann/train.hpp"
#include "amgann/core.hpp"
#include "amgann/dataset/benchmark.hpp"
#include "amgann/dataset/generate.hpp"
#include "amgann/dataset/sample.hpp"
#include "amgann/dataset/split.hpp"
#include "amgann/dataset/stats.hpp"
#include "amgann/fem/assemble.hpp"
#include "amgann/fem/problem.hpp"
#include "amgann/pipeline.hpp"
#include "amgann/pooling/pooling.hpp"
#include "amgann/rng.hpp"
#include "amgann/solver/pcg.hpp"
#include "amgann/sparse/coo.hpp"
#include "amgann/sparse/csr.hpp"
#include "amgann/sparse/matrix_market.hpp"
#include "amgann/sparse/dense.hpp"

#endif // AMGANN_AMGANN_HPP
