#pragma once

#include "twist/actions.hpp"
#include "twist/corresp.hpp"
#include "twist/group.hpp"

// Deterministic generators for random-but-valid structures used by the
// property tests and the self-check commands.

namespace twist {

// A random correspondence A -> B: a multiplicity embedding of A into a
// corner of M_k(B), conjugated by a random unitary of M_k(B).
Correspondence random_correspondence(const MatAlg& a, const MatAlg& b,
                                     Rng& rng, int max_rank = 3);

// A random element of the cut module.
Mat random_module_element(const Correspondence& e, Rng& rng);

// A unitarily conjugated copy of e together with the witnessing
// intertwiner e -> e'.
Intertwiner random_conjugate(const Correspondence& e, Rng& rng);

// A random unitary of M_k(B), embedded.
Mat random_matB_unitary(const MatAlg& b, int rank, Rng& rng);

// clock matrix diag(1, z, ..., z^{n-1}) and the cyclic shift with ones on
// the superdiagonal, z = exp(2 pi i / n).
AlgElement clock_matrix(int n);
AlgElement shift_matrix(int n);

// The twisted action of (Z/n)^2 on M_n: alpha_{(a,b)} = Ad(U^a V^b) with
// the scalar bicharacter cocycle, omega*((a1,b1),(a2,b2)) = z^{b1 a2} 1.
BSAction clock_shift_action(int n);

// The twisted action of Z/4 x Z/2 on M_4 generated by the clock and the
// squared shift; the two unitaries anticommute, giving the sign
// bicharacter as a nontrivial scalar cocycle on a group of order 8.
BSAction clock_double_shift_action();

// The trivial Z/2 action on M_2 whose only twist is omega(1,1) = -1.
BSAction sign_twist_action();

// A verified twisted action obtained by twisting the trivial action with
// random unitaries V_g.
BSAction random_twisted_action(const FiniteGroup& g, const MatAlg& a,
                               Rng& rng);

}  // namespace twist
