#pragma once

#include <cstddef>
#include <span>

#include "fockcheck/numkit/linop.hpp"

namespace fockcheck::numkit {

/// Dimension of the linear span of equally shaped exact operators, by
/// fraction-free elimination on their flattened entries. Rows are reduced
/// to primitive vectors (content divided out) after every step; an
/// intermediate that does not fit in 64 bits raises OverflowError.
std::size_t rank_of_span(std::span<const ExactOp> ops);

/// Rank of a single exact matrix (the span of its rows).
std::size_t matrix_rank(const ExactOp& a);

}  // namespace fockcheck::numkit
