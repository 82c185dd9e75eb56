#pragma once

#include "ranklab/method_result.hpp"
#include "ranklab/tensor.hpp"

namespace ranklab {

enum class VoteRule {
  kBorda,
  kCopeland,
  kSchulze,
  kRankedPairs,
  kKemenyYoung,
  kNanson,
  kBaldwin
};

/// Positional and Condorcet voting rules over ballots. Scores encode each
/// rule's natural order: borda sums per-ballot points (tied systems receive
/// the average of the positions they span), copeland sums +1/-1 majority
/// relations, schulze counts alternatives beaten by widest-path strength,
/// ranked_pairs reports L minus locked-graph depth, kemeny_young reports
/// L minus position in the exact minimum-disagreement order (lexicographically
/// smallest among co-optimal orders), nanson and baldwin report the round at
/// which a system was eliminated from iterative Borda counts.
/// kemeny_young requires L <= 8 and throws capability_error beyond that.
MethodResult vote(const BallotList& ballots, VoteRule rule);

/// Borda computed straight from the tensor by counting outcomes per ballot;
/// produces exactly the scores of vote(ballots(R), kBorda) without
/// materializing the ballot list.
MethodResult borda(const ResponseTensor& R);

/// Median-grade ranking: pools all M*N graded outcomes per system and orders
/// systems by the majority-value sequence (repeated removal of the lower
/// median). The score is the number of systems with a strictly worse
/// sequence, so equal grade multisets tie exactly.
MethodResult majority_judgment(const ResponseTensor& R);

/// Random-surfer ranking on the losers-point-to-winners graph (edge b -> a
/// weighted by wins of a over b), column-stochastic with a uniform fix for
/// systems that never lose. Score = stationary mass.
MethodResult pagerank(const ResponseTensor& R, double damping = 0.85, int max_iter = 100000,
                      double tol = 1e-12);

/// Markov-chain ranking with transitions a -> b proportional to the
/// empirical rate at which b beats a among their decisive comparisons,
/// scaled by the maximum comparison degree. Disconnected comparison graphs
/// get per-component stationary masses weighted by component size, plus a
/// warning note.
MethodResult rank_centrality(const ResponseTensor& R, int max_iter = 100000, double tol = 1e-12);

/// Evolutionary-chain ranking in the strong-selection limit: transitions
/// follow strictly-winning invasion edges of the tie-split win-rate matrix,
/// blended with uniform mutation mass. Score = stationary distribution.
MethodResult alpharank(const ResponseTensor& R, double mutation = 1e-3, int max_iter = 100000);

/// Zero-sum meta-game ranking: payoff = tie-split win rate minus 1/2, solved
/// by fictitious play. Score = equilibrium mixture mass with a small
/// average-payoff tie-break; diagnostics carry the raw mass and payoffs.
MethodResult nash_rank(const ResponseTensor& R, int iterations = 100000);

/// Spectral seriation: similarity counts the opponents two systems treat the
/// same way (by comparison sign); score = Fiedler vector of the similarity
/// Laplacian, sign-oriented to correlate with average outcomes.
MethodResult serial_rank(const ResponseTensor& R);

/// Least-squares potentials on the comparison graph: fits s minimizing
/// sum w_ab (s_a - s_b - Y_ab)^2 where Y is the win-rate flow and w counts
/// decisive comparisons. Potentials are mean-zero per connected component;
/// multiple components add a warning note.
MethodResult hodge_rank(const ResponseTensor& R);

}  // namespace ranklab
