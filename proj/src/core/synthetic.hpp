/*
 * (C) Copyright 2026 grouplect developers
 *
 * This software is licensed under the terms of the Apache Licence Version 2.0
 * which can be obtained at http://www.apache.org/licenses/LICENSE-2.0.
 */
#pragma once

#include <cstdint>
#include <utility>

#include "core/dataset.hpp"
#include "core/groups.hpp"

namespace grouplect {

/// Synthetic benchmark generator.  Five standard-normal features X1..X5;
/// binary labels Y1,Y2,Y3 drawn with P(Y1=1|X)=sigmoid(3*X1),
/// P(Y2=1|X)=sigmoid(2*X4), P(Y3=1|X)=sigmoid(X5).  X2 and X3 are then
/// replaced by copies of X4 and X5 with round(rho*n) entries permuted
/// (independent row subsets and permutations per column).  Groups are
/// {X1,X2,X3}, {X4}, {X5}, each of cost 1.  Bit-reproducible per seed.
std::pair<Dataset, GroupStructure> generate_illustrative(std::size_t n, double rho,
                                                         std::uint64_t seed);

}  // namespace grouplect
