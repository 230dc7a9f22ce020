#pragma once

// Finite probability spaces with named events.
//
// Probabilities are either double (comparisons within 1e-12) or Rational
// (exact). The checks mirror the coherence axioms for personal
// probabilities: nonnegativity, Pr(S) = 1 for the sure event S, and finite
// additivity over disjoint events.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bayesrec/rational.hpp"

namespace bayesrec {

/// Membership mask over the outcomes of one space.
class Event {
 public:
  Event() = default;
  explicit Event(std::vector<bool> members) : members_(std::move(members)) {}

  std::size_t size() const noexcept { return members_.size(); }
  bool contains(std::size_t i) const { return members_.at(i); }

  Event operator&(const Event& other) const { return combine(other, [](bool x, bool y) { return x && y; }); }
  Event operator|(const Event& other) const { return combine(other, [](bool x, bool y) { return x || y; }); }
  Event operator~() const {
    std::vector<bool> m(members_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = !members_[i];
    return Event(std::move(m));
  }

  bool disjoint(const Event& other) const {
    const Event both = *this & other;
    return std::none_of(both.members_.begin(), both.members_.end(), [](bool b) { return b; });
  }

  friend bool operator==(const Event&, const Event&) = default;

 private:
  template <typename Op>
  Event combine(const Event& other, Op op) const {
    if (other.members_.size() != members_.size()) throw std::invalid_argument("Event: spaces differ");
    std::vector<bool> m(members_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = op(members_[i], other.members_[i]);
    return Event(std::move(m));
  }

  std::vector<bool> members_;
};

template <typename P>
inline constexpr bool is_exact_probability_v = !std::is_floating_point_v<P>;

inline constexpr double kFloatProbabilityTolerance = 1e-12;

template <typename P>
bool probability_equal(const P& x, const P& y) {
  if constexpr (is_exact_probability_v<P>) {
    return x == y;
  } else {
    return std::abs(x - y) <= kFloatProbabilityTolerance;
  }
}

template <typename P>
class FiniteSpace {
 public:
  struct Outcome {
    std::string label;
    P probability;
  };

  explicit FiniteSpace(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) throw std::invalid_argument("FiniteSpace: needs at least one outcome");
    P total = P(0);
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
      if (outcomes_[i].probability < P(0)) throw std::domain_error("FiniteSpace: negative probability");
      for (std::size_t j = 0; j < i; ++j) {
        if (outcomes_[j].label == outcomes_[i].label) {
          throw std::invalid_argument("FiniteSpace: duplicate outcome '" + outcomes_[i].label + "'");
        }
      }
      total += outcomes_[i].probability;
    }
    if (!probability_equal<P>(total, P(1))) throw std::domain_error("FiniteSpace: probabilities must sum to 1");
  }

  const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }

  /// Event containing the listed outcome labels.
  Event event_of(std::span<const std::string> labels) const {
    std::vector<bool> m(outcomes_.size(), false);
    for (const auto& label : labels) m[index_of(label)] = true;
    return Event(std::move(m));
  }
  Event event_of(std::initializer_list<std::string> labels) const {
    return event_of(std::span<const std::string>(labels.begin(), labels.size()));
  }

  void define_event(const std::string& name, std::span<const std::string> labels) {
    events_[name] = event_of(labels);
  }
  void define_event(const std::string& name, std::initializer_list<std::string> labels) {
    events_[name] = event_of(labels);
  }

  const Event& event(const std::string& name) const {
    const auto it = events_.find(name);
    if (it == events_.end()) throw std::invalid_argument("FiniteSpace: unknown event '" + name + "'");
    return it->second;
  }

  Event sure_event() const { return Event(std::vector<bool>(outcomes_.size(), true)); }
  Event empty_event() const { return Event(std::vector<bool>(outcomes_.size(), false)); }

  P prob(const Event& e) const {
    if (e.size() != outcomes_.size()) throw std::invalid_argument("FiniteSpace: event from another space");
    P total = P(0);
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
      if (e.contains(i)) total += outcomes_[i].probability;
    }
    return total;
  }
  P prob(const std::string& name) const { return prob(event(name)); }

  /// Pr(a | given_1, ..., given_k). Throws std::domain_error when the
  /// conditioning event has probability zero.
  P cond_prob(const Event& a, std::span<const Event> given) const {
    Event condition = sure_event();
    for (const auto& g : given) condition = condition & g;
    const P denom = prob(condition);
    if (denom == P(0)) throw std::domain_error("FiniteSpace: conditioning event has probability zero");
    return prob(a & condition) / denom;
  }
  P cond_prob(const std::string& a, std::span<const std::string> given) const {
    return cond_prob(event(a), resolve(given));
  }
  P cond_prob(const std::string& a, std::initializer_list<std::string> given) const {
    return cond_prob(a, std::span<const std::string>(given.begin(), given.size()));
  }

  bool independent(const Event& a, const Event& b) const {
    return probability_equal<P>(prob(a & b), prob(a) * prob(b));
  }
  bool independent(const std::string& a, const std::string& b) const { return independent(event(a), event(b)); }

  /// Whether a and b are independent conditional on every event in `given`.
  bool cond_independent(const Event& a, const Event& b, std::span<const Event> given) const {
    return probability_equal<P>(cond_prob(a & b, given), cond_prob(a, given) * cond_prob(b, given));
  }
  bool cond_independent(const std::string& a, const std::string& b, std::span<const std::string> given) const {
    const auto g = resolve(given);
    return cond_independent(event(a), event(b), g);
  }
  bool cond_independent(const std::string& a, const std::string& b, std::initializer_list<std::string> given) const {
    return cond_independent(a, b, std::span<const std::string>(given.begin(), given.size()));
  }

 private:
  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
      if (outcomes_[i].label == label) return i;
    }
    throw std::invalid_argument("FiniteSpace: unknown outcome '" + label + "'");
  }

  std::vector<Event> resolve(std::span<const std::string> names) const {
    std::vector<Event> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(event(n));
    return out;
  }

  std::vector<Outcome> outcomes_;
  std::map<std::string, Event> events_;
};

struct AxiomReport {
  bool nonnegative = true;
  bool sure_event_is_one = true;
  bool additive = true;

  bool ok() const { return nonnegative && sure_event_is_one && additive; }
};

/// Check nonnegativity over the given events, Pr(S) = 1, and
/// Pr(A ∪ B) = Pr(A) + Pr(B) for each disjoint pair. Pairs that are not
/// disjoint are rejected with std::invalid_argument.
template <typename P>
AxiomReport check_axioms(const FiniteSpace<P>& space, std::span<const std::pair<Event, Event>> disjoint_pairs) {
  AxiomReport r;
  r.sure_event_is_one = probability_equal<P>(space.prob(space.sure_event()), P(1));
  for (const auto& [a, b] : disjoint_pairs) {
    if (!a.disjoint(b)) throw std::invalid_argument("check_axioms: events are not disjoint");
    const P pa = space.prob(a);
    const P pb = space.prob(b);
    if (pa < P(0) || pb < P(0)) r.nonnegative = false;
    if (!probability_equal<P>(space.prob(a | b), pa + pb)) r.additive = false;
  }
  for (const auto& o : space.outcomes()) {
    if (o.probability < P(0)) r.nonnegative = false;
  }
  return r;
}

/// Two independent tosses of a fair coin with events
/// A = first toss heads, B = second toss heads, C = both tosses agree.
template <typename P>
FiniteSpace<P> two_fair_tosses() {
  const P quarter = P(1) / P(4);
  FiniteSpace<P> space({{"HH", quarter}, {"HT", quarter}, {"TH", quarter}, {"TT", quarter}});
  space.define_event("A", {"HH", "HT"});
  space.define_event("B", {"HH", "TH"});
  space.define_event("C", {"HH", "TT"});
  return space;
}

}  // namespace bayesrec
