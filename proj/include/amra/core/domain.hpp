#pragma once

#include <concepts>
#include <functional>
#include <utility>
#include <vector>

#include "amra/core/types.hpp"

namespace amra {

// Implicit multi-resolution graph. Resolutions are numbered 1 (finest) to
// num_resolutions() (coarsest); resolution 0 is the union action space and is
// synthesised by union_successors().
template <typename D>
concept SearchDomain = requires(const D& d, const typename D::State& s, int r,
                                std::vector<Edge<typename D::State>>& out) {
  typename D::State;
  { d.num_resolutions() } -> std::convertible_to<int>;
  { d.resolutions_of(s) } -> std::convertible_to<ResolutionMask>;
  d.successors(s, r, out);
  { std::hash<typename D::State>{}(s) } -> std::convertible_to<std::size_t>;
  { s == s } -> std::convertible_to<bool>;
  { s < s } -> std::convertible_to<bool>;
};

template <typename State>
using GoalTest = std::function<bool(const State&)>;

/// Anchor action space: concatenation of every resolution's successors that
/// the state lies on, finest first.
template <SearchDomain D>
void union_successors(const D& domain, const typename D::State& s,
                      std::vector<Edge<typename D::State>>& out) {
  const ResolutionMask mask = domain.resolutions_of(s);
  for (int r = 1; r <= domain.num_resolutions(); ++r) {
    if (has_resolution(mask, r)) domain.successors(s, r, out);
  }
}

/// Successors at resolution r, where r = 0 means the union action space.
template <SearchDomain D>
void successors_at(const D& domain, const typename D::State& s, int r,
                   std::vector<Edge<typename D::State>>& out) {
  if (r == 0) {
    union_successors(domain, s, out);
  } else {
    domain.successors(s, r, out);
  }
}

/// Exposes a subset of another domain's resolutions, renumbered 1..k in the
/// order given. Used to run single-resolution baselines on a multi-resolution
/// domain.
template <SearchDomain D>
class ResolutionSubset {
 public:
  using State = typename D::State;

  ResolutionSubset(const D& base, std::vector<int> selected)
      : base_(&base), selected_(std::move(selected)) {
    if (selected_.empty()) throw ContractViolation("resolution subset must not be empty");
    for (int r : selected_) {
      if (r < 1 || r > base.num_resolutions()) throw ContractViolation("resolution out of range");
    }
  }

  [[nodiscard]] int num_resolutions() const { return static_cast<int>(selected_.size()); }

  [[nodiscard]] ResolutionMask resolutions_of(const State& s) const {
    const ResolutionMask base_mask = base_->resolutions_of(s);
    ResolutionMask mask = 0;
    for (std::size_t k = 0; k < selected_.size(); ++k) {
      if (has_resolution(base_mask, selected_[k])) mask |= resolution_bit(static_cast<int>(k) + 1);
    }
    return mask;
  }

  void successors(const State& s, int r, std::vector<Edge<State>>& out) const {
    base_->successors(s, selected_.at(static_cast<std::size_t>(r - 1)), out);
  }

  [[nodiscard]] const D& base() const { return *base_; }
  [[nodiscard]] const std::vector<int>& selected() const { return selected_; }

 private:
  const D* base_;
  std::vector<int> selected_;
};

}  // namespace amra
