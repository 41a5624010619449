#include "forge/match.hpp"

#include <algorithm>
#include <optional>

namespace forge::rdf {

namespace {

class Matcher {
 public:
  Matcher(const Graph& g, std::span<const TriplePattern> patterns)
      : graph_(g), patterns_(patterns), done_(patterns.size(), false) {}

  std::vector<Binding> run() {
    if (patterns_.empty()) return {Binding{}};
    solve(patterns_.size());
    std::sort(results_.begin(), results_.end());
    return std::move(results_);
  }

 private:
  std::optional<Term> resolve(const PatternSlot& slot) const {
    if (const auto* t = std::get_if<Term>(&slot)) return *t;
    auto it = binding_.find(std::get<Variable>(slot).name);
    if (it == binding_.end()) return std::nullopt;
    return it->second;
  }

  int bound_count(const TriplePattern& p) const {
    return static_cast<int>(resolve(p.subject).has_value()) * 4 +
           static_cast<int>(resolve(p.object).has_value()) * 2 +
           static_cast<int>(resolve(p.predicate).has_value());
  }

  // Unifies one slot with a term; records new variable assignments in
  // `assigned` so they can be undone.
  bool unify(const PatternSlot& slot, const Term& term,
             std::vector<std::string>& assigned) {
    if (const auto* t = std::get_if<Term>(&slot)) return *t == term;
    const std::string& name = std::get<Variable>(slot).name;
    auto it = binding_.find(name);
    if (it != binding_.end()) return it->second == term;
    binding_.emplace(name, term);
    assigned.push_back(name);
    return true;
  }

  void try_triple(const TriplePattern& p, const Triple& t, std::size_t remaining) {
    std::vector<std::string> assigned;
    if (unify(p.subject, t.subject, assigned) &&
        unify(p.predicate, t.predicate, assigned) &&
        unify(p.object, t.object, assigned)) {
      solve(remaining - 1);
    }
    for (const auto& name : assigned) binding_.erase(name);
  }

  void solve(std::size_t remaining) {
    if (remaining == 0) {
      results_.push_back(binding_);
      return;
    }
    std::size_t best = patterns_.size();
    int best_score = -1;
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      if (done_[i]) continue;
      int score = bound_count(patterns_[i]);
      if (score > best_score) {
        best = i;
        best_score = score;
      }
    }
    const TriplePattern& p = patterns_[best];
    done_[best] = true;
    if (auto s = resolve(p.subject)) {
      auto [first, last] = graph_.triples().equal_range(SubjectKey{*s});
      for (auto it = first; it != last; ++it) try_triple(p, *it, remaining);
    } else {
      for (const auto& t : graph_) try_triple(p, t, remaining);
    }
    done_[best] = false;
  }

  const Graph& graph_;
  std::span<const TriplePattern> patterns_;
  std::vector<bool> done_;
  Binding binding_;
  std::vector<Binding> results_;
};

}  // namespace

std::vector<Binding> match(const Graph& g, std::span<const TriplePattern> patterns) {
  return Matcher(g, patterns).run();
}

}  // namespace forge::rdf
