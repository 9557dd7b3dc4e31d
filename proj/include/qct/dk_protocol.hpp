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

// Three-dimensional coin-tossing protocol with bias 1/4, plus the two known
// cheating strategies.
//
// Honest run:
//   1. Alice flips b_A and prepares |psi_{b_A}> on (her qutrit, mailbox
//      qutrit); Bob flips b_B.
//   2. Bob swaps the mailbox qutrit into his second register and writes b_B
//      into the classical mailbox bit.
//   3. Alice puts her qutrit into the mailbox.
//   4. Bob moves the mailbox qutrit into his first register.
//   5. Alice outputs b_A xor b_B. Bob measures {|psi0><psi0|, |psi1><psi1|,
//      rest} on his two registers, getting b_A', and outputs b_A' xor b_B.
//
// Layout (left factor outermost):
//   mailbox  = (bit: 2) (x) (qutrit: 3)          blocks "0", "1" of dim 3
//   Alice    = (b_A: 2) (x) (qutrit: 3)          blocks "0", "1" of dim 3
//   Bob      = (b_B: 2) (x) (first: 3) (x) (second: 3)   blocks of dim 9
// The protocol has four rounds: Bob (step 2), Alice (step 3), Bob (step 4),
// Alice (step 5, computes her output bit).

#pragma once

#include "qct/protocol.hpp"

namespace qct::dk {

/// (|0,0> + |1,2>) / sqrt 2
CVector psi0();
/// (|1,1> + |0,2>) / sqrt 2
CVector psi1();
CVector psi(int bit);
/// Alice's cheating preparation for branch b: (|b,0> + |b,1> + 2|1-b,2>) / sqrt 6.
CVector psi_tilde(int bit);

AlgebraSpec mailbox_algebra();
AlgebraSpec alice_algebra();
AlgebraSpec bob_algebra();

/// Bob's projective measurement {|psi0><psi0|, |psi1><psi1|, rest} on C^3 (x) C^3.
Povm bob_register_measurement();

/// Bob's quantum registers start in |f, f>; the protocol does not depend on f.
Strategy honest_alice();
Strategy honest_bob(std::size_t fiducial = 2);

Protocol build_dk_honest(std::size_t bob_fiducial = 2);

/// Bob measures the mailbox qutrit in the computational basis. On c != 2 he
/// knows b_A = c and announces b_B = c xor target; on c = 2 he announces his
/// own coin. He always outputs `target`. Private algebra: classical
/// (c: 3) (x) (coin: 2), with c recorded for later inspection.
Strategy build_bob_cheat(int target);

/// Alice prepares psi_tilde(0), flips her qutrit's |0>,|1> when
/// b_B xor target = 1, hands the qutrit over, and outputs `target`.
/// Private algebra: one qutrit.
Strategy build_alice_cheat(int target);

}  // namespace qct::dk
