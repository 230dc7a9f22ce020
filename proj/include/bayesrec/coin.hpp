#pragma once

// Three personal answers to "what is the probability that the next toss
// is heads?" after observing the same sequence of coin tosses:
//
//   coin_fair    fair, independent tosses; ignores the data
//   coin_beta    i.i.d. Bernoulli(p) with a Beta prior on p
//   coin_markov  first-order Markov chain with uniform priors on
//                p = Pr(H | previous H) and q = Pr(H | previous T); the
//                unobserved toss before the first one is marginalised
//
// Every function is templated on the number type so that the same code
// yields exact answers with Rational and floating answers with double.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "bayesrec/numerics.hpp"
#include "bayesrec/rational.hpp"

namespace bayesrec {

enum class Flip { heads, tails };

class CoinSequence {
 public:
  CoinSequence() = default;
  explicit CoinSequence(std::vector<Flip> flips) : flips_(std::move(flips)) {}

  /// Parse a string over {H, T}. Throws std::invalid_argument on any other character.
  static CoinSequence parse(std::string_view text) {
    std::vector<Flip> flips;
    flips.reserve(text.size());
    for (char ch : text) {
      if (ch == 'H') {
        flips.push_back(Flip::heads);
      } else if (ch == 'T') {
        flips.push_back(Flip::tails);
      } else {
        throw std::invalid_argument(std::string("coin sequence: unexpected character '") + ch + "'");
      }
    }
    return CoinSequence(std::move(flips));
  }

  const std::vector<Flip>& flips() const noexcept { return flips_; }
  std::size_t size() const noexcept { return flips_.size(); }
  bool empty() const noexcept { return flips_.empty(); }
  std::size_t heads() const {
    std::size_t h = 0;
    for (Flip f : flips_) h += f == Flip::heads ? 1 : 0;
    return h;
  }

  /// Every H becomes T and vice versa.
  CoinSequence swapped() const {
    std::vector<Flip> out;
    out.reserve(flips_.size());
    for (Flip f : flips_) out.push_back(f == Flip::heads ? Flip::tails : Flip::heads);
    return CoinSequence(std::move(out));
  }

  std::string str() const {
    std::string s;
    for (Flip f : flips_) s.push_back(f == Flip::heads ? 'H' : 'T');
    return s;
  }

 private:
  std::vector<Flip> flips_;
};

template <typename T = double>
T coin_fair(const CoinSequence& /*seq*/) {
  return T(1) / T(2);
}

template <typename T = double>
T coin_beta(const CoinSequence& seq, T alpha0 = T(1), T beta0 = T(1)) {
  if (!(alpha0 > 0) || !(beta0 > 0)) throw std::domain_error("coin_beta: prior parameters must be positive");
  return (alpha0 + T(seq.heads())) / (alpha0 + beta0 + T(seq.size()));
}

enum class BranchWeighting {
  equal,      // each value of the unobserved initial toss gets weight 1/2
  posterior,  // weights proportional to each branch's marginal likelihood
};

/// Transition tallies for one assumed value of the unobserved initial toss.
struct TransitionCounts {
  std::size_t heads_after_heads = 0;
  std::size_t tails_after_heads = 0;
  std::size_t heads_after_tails = 0;
  std::size_t tails_after_tails = 0;
};

inline TransitionCounts count_transitions(const CoinSequence& seq, Flip initial) {
  TransitionCounts c;
  Flip prev = initial;
  for (Flip f : seq.flips()) {
    if (prev == Flip::heads) {
      (f == Flip::heads ? c.heads_after_heads : c.tails_after_heads) += 1;
    } else {
      (f == Flip::heads ? c.heads_after_tails : c.tails_after_tails) += 1;
    }
    prev = f;
  }
  return c;
}

namespace detail {

// B(a, b) for positive integers, exactly.
inline Rational exact_beta(std::size_t a, std::size_t b) {
  using boost::multiprecision::cpp_int;
  const auto factorial = [](std::size_t n) {
    cpp_int r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= i;
    return r;
  };
  return Rational(factorial(a - 1) * factorial(b - 1)) / Rational(factorial(a + b - 1));
}

template <typename T>
T log_or_exact_marginal(const TransitionCounts& c) {
  const std::size_t hh = c.heads_after_heads + 1, th = c.tails_after_heads + 1;
  const std::size_t ht = c.heads_after_tails + 1, tt = c.tails_after_tails + 1;
  if constexpr (std::is_floating_point_v<T>) {
    return log_beta(double(hh), double(th)) + log_beta(double(ht), double(tt));
  } else {
    return T(exact_beta(hh, th) * exact_beta(ht, tt));
  }
}

}  // namespace detail

/// Probability that the next toss is heads under the Markov model.
/// Throws std::domain_error for an empty sequence.
template <typename T = double>
T coin_markov(const CoinSequence& seq, BranchWeighting weighting = BranchWeighting::equal) {
  if (seq.empty()) throw std::domain_error("coin_markov: sequence must be non-empty");

  const bool last_heads = seq.flips().back() == Flip::heads;
  const auto next_heads = [&](const TransitionCounts& c) {
    // Posterior mean of p (or q) under a uniform prior.
    if (last_heads) {
      return T(c.heads_after_heads + 1) / T(c.heads_after_heads + c.tails_after_heads + 2);
    }
    return T(c.heads_after_tails + 1) / T(c.heads_after_tails + c.tails_after_tails + 2);
  };

  const TransitionCounts from_heads = count_transitions(seq, Flip::heads);
  const TransitionCounts from_tails = count_transitions(seq, Flip::tails);

  T w_heads = T(1) / T(2);
  if (weighting == BranchWeighting::posterior) {
    const T m_heads = detail::log_or_exact_marginal<T>(from_heads);
    const T m_tails = detail::log_or_exact_marginal<T>(from_tails);
    if constexpr (std::is_floating_point_v<T>) {
      w_heads = T(1) / (T(1) + std::exp(m_tails - m_heads));
    } else {
      w_heads = m_heads / (m_heads + m_tails);
    }
  }
  return w_heads * next_heads(from_heads) + (T(1) - w_heads) * next_heads(from_tails);
}

}  // namespace bayesrec
