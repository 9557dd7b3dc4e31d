// Copyright 2026 The QCT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Random algebras, states, channels, POVMs and strategies that respect a
// given block structure. Used for property checks and for sampling
// opponents when verifying dilations.

#pragma once

#include "qct/protocol.hpp"
#include "qct/random.hpp"

namespace qct {

/// Algebra of total dimension in [1, max_dim]: quantum, classical or a
/// mixture of blocks.
AlgebraSpec random_algebra(Rng& rng, std::size_t max_dim);

/// Full-rank-within-blocks density operator.
CMatrix random_block_state(Rng& rng, const AlgebraSpec& algebra);

/// Channel on `algebra` whose Kraus operators move each block into a block
/// (a random permutation of blocks per Kraus operator).
Channel random_block_channel(Rng& rng, const AlgebraSpec& algebra, std::size_t kraus_count);

/// Random block-diagonal POVM with outcomes 0, 1, abort.
Povm random_coin_povm(Rng& rng, const AlgebraSpec& algebra);

Strategy random_strategy(Rng& rng, Party party, const AlgebraSpec& private_algebra,
                         const AlgebraSpec& mailbox, std::size_t moves,
                         std::size_t kraus_count = 2);

/// Opponent for `p`'s `party` slot: random private algebra of dimension
/// at most `max_private_dim`, same mailbox and move count.
Strategy random_opponent(Rng& rng, const Protocol& p, Party party, std::size_t max_private_dim = 3);

}  // namespace qct
