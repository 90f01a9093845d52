#pragma once

// Grading of predicted grids and multi-sample aggregation (pass@k, majority
// vote, oracle best-of-N).

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gridlogic/answer.hpp"
#include "gridlogic/core.hpp"
#include "gridlogic/text_util.hpp"

namespace gridlogic {

struct GradeResult {
  bool grid_correct = false;
  double cell_accuracy = 0;
  std::size_t cells_total = 0;
  std::size_t cells_correct = 0;

  bool operator==(const GradeResult&) const = default;
};

// A cell counts when the prediction has it and it matches the gold value
// after canonicalization. Attributes are matched by name, not position.
inline GradeResult grade(const AnswerGrid& pred, const SolutionGrid& gold) {
  GradeResult g;
  g.cells_total = static_cast<std::size_t>(gold.n_houses()) * gold.n_attributes();
  for (std::size_t a = 0; a < gold.n_attributes(); ++a) {
    std::optional<std::size_t> pa;
    for (std::size_t i = 0; i < pred.attributes.size(); ++i) {
      if (canonical_equal(pred.attributes[i], gold.attributes()[a])) pa = i;
    }
    if (!pa) continue;
    for (int k = 1; k <= gold.n_houses() && k <= pred.n_houses; ++k) {
      const auto& cell = pred.cell(k, *pa);
      if (cell && canonical_equal(*cell, gold.at(k, a))) ++g.cells_correct;
    }
  }
  g.grid_correct = g.cells_total > 0 && g.cells_correct == g.cells_total;
  g.cell_accuracy = g.cells_total == 0 ? 0.0 : static_cast<double>(g.cells_correct) / static_cast<double>(g.cells_total);
  return g;
}

inline GradeResult grade(const ParsedAnswer& pred, const SolutionGrid& gold) {
  if (const auto* grid = std::get_if<AnswerGrid>(&pred)) return grade(*grid, gold);
  GradeResult g;
  g.cells_total = static_cast<std::size_t>(gold.n_houses()) * gold.n_attributes();
  return g;
}

// ---- pass@k ----------------------------------------------------------------

using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline void check_pass_at_k(std::size_t n, std::size_t c, std::size_t k) {
  if (c > n || k < 1 || k > n) throw std::domain_error("pass@k requires 0 <= c <= n and 1 <= k <= n");
}

inline boost::multiprecision::cpp_int binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  boost::multiprecision::cpp_int r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

// 1 - C(n-c, k) / C(n, k), as an exact fraction.
inline Rational pass_at_k_exact(std::size_t n, std::size_t c, std::size_t k) {
  detail::check_pass_at_k(n, c, k);
  return Rational(1) - Rational(detail::binomial(n - c, k), detail::binomial(n, k));
}

// Unbiased pass@k estimate. The product form never forms a binomial, so it
// stays finite for any n.
inline double pass_at_k(std::size_t n, std::size_t c, std::size_t k) {
  detail::check_pass_at_k(n, c, k);
  if (n - c < k) return 1.0;
  double miss = 1.0;
  for (std::size_t i = n - c + 1; i <= n; ++i) miss *= 1.0 - static_cast<double>(k) / static_cast<double>(i);
  return 1.0 - miss;
}

// ---- candidate selection -----------------------------------------------------

struct VoteCandidate {
  std::size_t sample_index = 0;
  AnswerGrid grid;
};

struct Selection {
  std::size_t sample_index = 0;
  AnswerGrid grid;
  double score = 0;
};

// Scores one candidate in the context of the whole pool.
using CandidateScorer = std::function<double(const VoteCandidate&, std::span<const VoteCandidate>)>;

// Highest score wins; ties go to the lowest sample index.
inline Selection select_best(std::span<const VoteCandidate> candidates, const CandidateScorer& scorer) {
  if (candidates.empty()) throw std::invalid_argument("no candidates to select from");
  const VoteCandidate* best = nullptr;
  double best_score = 0;
  for (const auto& c : candidates) {
    const double s = scorer(c, candidates);
    if (best == nullptr || s > best_score || (s == best_score && c.sample_index < best->sample_index)) {
      best = &c;
      best_score = s;
    }
  }
  return {best->sample_index, best->grid, best_score};
}

// Sum over a candidate's filled cells of how many candidates propose the same value there.
inline double cell_frequency_score(const VoteCandidate& cand, std::span<const VoteCandidate> pool) {
  double score = 0;
  for (int k = 1; k <= cand.grid.n_houses; ++k) {
    for (std::size_t a = 0; a < cand.grid.attributes.size(); ++a) {
      const auto& v = cand.grid.cell(k, a);
      if (!v) continue;
      for (const auto& other : pool) {
        if (k <= other.grid.n_houses && a < other.grid.attributes.size() && other.grid.cell(k, a) == v) ++score;
      }
    }
  }
  return score;
}

inline Selection majority_vote(std::span<const VoteCandidate> candidates) {
  return select_best(candidates, cell_frequency_score);
}

// Candidates are numbered by their position.
inline Selection majority_vote(const std::vector<AnswerGrid>& candidates) {
  std::vector<VoteCandidate> pool;
  for (std::size_t i = 0; i < candidates.size(); ++i) pool.push_back({i, candidates[i]});
  return majority_vote(pool);
}

// Coverage ceiling: true iff some sample is fully correct.
inline bool bon_oracle(std::span<const GradeResult> grades) {
  return std::any_of(grades.begin(), grades.end(), [](const GradeResult& g) { return g.grid_correct; });
}

}  // namespace gridlogic
