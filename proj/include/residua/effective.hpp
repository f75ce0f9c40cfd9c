#pragma once

#include <concepts>
#include <cstddef>
#include <utility>
#include <vector>

namespace residua {

/// A lattice whose residual calculus can be evaluated: binary operations, a
/// bottom, an exact finite listing of the maximal subelements of any element,
/// and co-Heyting subtraction. FiniteLattice and the ordinal testbed both model it.
template <class L>
concept EffectiveLattice = requires(const L& l, const typename L::element_type& x) {
  typename L::element_type;
  { l.leq(x, x) } -> std::convertible_to<bool>;
  { l.meet(x, x) } -> std::convertible_to<typename L::element_type>;
  { l.join(x, x) } -> std::convertible_to<typename L::element_type>;
  { l.bottom() } -> std::convertible_to<typename L::element_type>;
  { l.lower_covers(x) } -> std::convertible_to<std::vector<typename L::element_type>>;
  { l.co_heyting_sub(x, x) } -> std::convertible_to<typename L::element_type>;
};

template <EffectiveLattice L>
using element_t = typename L::element_type;

template <EffectiveLattice L>
element_t<L> meet_all(const L& l, const std::vector<element_t<L>>& xs, const element_t<L>& empty) {
  if (xs.empty()) return empty;
  element_t<L> acc = xs.front();
  for (const auto& v : xs) acc = l.meet(acc, v);
  return acc;
}

template <EffectiveLattice L>
element_t<L> join_all(const L& l, const std::vector<element_t<L>>& xs) {
  element_t<L> acc = l.bottom();
  for (const auto& v : xs) acc = l.join(acc, v);
  return acc;
}

/// mu(x): meet of the maximal subelements, or x itself when there are none.
template <EffectiveLattice L>
element_t<L> residual_derivative(const L& l, const element_t<L>& x) {
  return meet_all(l, l.lower_covers(x), x);
}

/// x, mu(x), mu(mu(x)), ... : the first `count` + 1 iterates.
template <EffectiveLattice L>
std::vector<element_t<L>> mu_iterates(const L& l, const element_t<L>& x, std::size_t count) {
  std::vector<element_t<L>> out{x};
  for (std::size_t k = 0; k < count; ++k) out.push_back(residual_derivative(l, out.back()));
  return out;
}

/// Pairs (m, x - m) for m in M(x), in the order of lower_covers.
template <EffectiveLattice L>
std::vector<std::pair<element_t<L>, element_t<L>>> residues(const L& l, const element_t<L>& x) {
  std::vector<std::pair<element_t<L>, element_t<L>>> out;
  for (const auto& m : l.lower_covers(x)) out.emplace_back(m, l.co_heyting_sub(x, m));
  return out;
}

/// Join of all residues of x; bottom when x has no maximal subelement.
template <EffectiveLattice L>
element_t<L> boundary(const L& l, const element_t<L>& x) {
  element_t<L> acc = l.bottom();
  for (const auto& [m, r] : residues(l, x)) acc = l.join(acc, r);
  return acc;
}

}  // namespace residua
