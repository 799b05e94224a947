#pragma once

// The distribution monad on finite sets: finitely supported weight functions
// summing to one, with pushforward, monad multiplication, products,
// convolution, and gluing along a pullback.

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "simctx/errors.hpp"
#include "simctx/semiring.hpp"

namespace simctx {

template <class Key>
class Dist {
 public:
  using key_type = Key;
  using map_type = std::map<Key, Scalar>;
  using const_iterator = typename map_type::const_iterator;

  Dist() = default;

  static Dist delta(Key key, SemiringKind semiring) {
    Dist d;
    d.semiring_ = semiring;
    d.weights_.emplace(std::move(key), Scalar::one(semiring));
    return d;
  }

  /// Builds a distribution from raw weights, dropping explicit zeros.
  /// Returns nothing when the weights do not sum to one.
  static std::optional<Dist> try_from_weights(SemiringKind semiring, map_type weights) {
    Dist d;
    d.semiring_ = semiring;
    Scalar total = Scalar::zero(semiring);
    for (auto& [key, w] : weights) {
      if (w.kind() != semiring) throw UsageError("weight from a different semiring");
      if (w.is_zero()) continue;
      total = add(total, w);
      d.weights_.emplace(key, std::move(w));
    }
    if (!total.is_one()) return std::nullopt;
    return d;
  }

  static Dist from_weights(SemiringKind semiring, map_type weights) {
    auto d = try_from_weights(semiring, std::move(weights));
    if (!d) throw ContractViolation("weights do not sum to one");
    return std::move(*d);
  }

  SemiringKind semiring() const { return semiring_; }
  const map_type& weights() const { return weights_; }
  std::size_t support_size() const { return weights_.size(); }
  const_iterator begin() const { return weights_.begin(); }
  const_iterator end() const { return weights_.end(); }

  Scalar weight(const Key& key) const {
    auto it = weights_.find(key);
    return it == weights_.end() ? Scalar::zero(semiring_) : it->second;
  }

  std::vector<Key> support() const {
    std::vector<Key> keys;
    keys.reserve(weights_.size());
    for (const auto& [k, w] : weights_) keys.push_back(k);
    return keys;
  }

  bool is_delta() const { return weights_.size() == 1; }
  const Key& delta_point() const {
    if (!is_delta()) throw UsageError("distribution is not a delta");
    return weights_.begin()->first;
  }

  friend bool operator==(const Dist&, const Dist&) = default;
  friend auto operator<=>(const Dist&, const Dist&) = default;

 private:
  SemiringKind semiring_ = SemiringKind::NonnegRational;
  map_type weights_;
};

template <class Key>
Dist<Key> delta(Key key, SemiringKind semiring) {
  return Dist<Key>::delta(std::move(key), semiring);
}

/// Sums weights over the fibers of f.
template <class Key, class F>
auto pushforward(F&& f, const Dist<Key>& p) {
  using Out = std::decay_t<std::invoke_result_t<F&, const Key&>>;
  std::map<Out, Scalar> acc;
  for (const auto& [k, w] : p) {
    Out y = f(k);
    auto [it, inserted] = acc.try_emplace(std::move(y), w);
    if (!inserted) it->second = add(it->second, w);
  }
  auto result = Dist<Out>::try_from_weights(p.semiring(), std::move(acc));
  // Over a ring the fibers can cancel to zero; the total is still one.
  if (!result) throw ContractViolation("pushforward lost normalization");
  return std::move(*result);
}

/// Monad multiplication: mixes the inner distributions by the outer weights.
template <class Key>
Dist<Key> flatten(const Dist<Dist<Key>>& outer) {
  std::map<Key, Scalar> acc;
  for (const auto& [inner, w] : outer) {
    if (inner.semiring() != outer.semiring()) throw UsageError("inner distribution from a different semiring");
    for (const auto& [k, v] : inner) {
      Scalar term = mul(w, v);
      auto [it, inserted] = acc.try_emplace(k, term);
      if (!inserted) it->second = add(it->second, term);
    }
  }
  return Dist<Key>::from_weights(outer.semiring(), std::move(acc));
}

/// Convex combination sum_i alpha_i p_i; the alphas must sum to one.
template <class Key>
Dist<Key> mixture(const std::vector<std::pair<Scalar, Dist<Key>>>& parts) {
  if (parts.empty()) throw UsageError("empty mixture");
  SemiringKind s = parts.front().first.kind();
  std::map<Key, Scalar> acc;
  Scalar total = Scalar::zero(s);
  for (const auto& [alpha, p] : parts) {
    if (p.semiring() != s) throw UsageError("mixture of distributions from different semirings");
    total = add(total, alpha);
    for (const auto& [k, v] : p) {
      Scalar term = mul(alpha, v);
      auto [it, inserted] = acc.try_emplace(k, term);
      if (!inserted) it->second = add(it->second, term);
    }
  }
  if (!total.is_one()) throw UsageError("mixture weights do not sum to one");
  return Dist<Key>::from_weights(s, std::move(acc));
}

/// Product distribution (p . q)(x, y) = p(x) q(y).
template <class K1, class K2>
Dist<std::pair<K1, K2>> tensor(const Dist<K1>& p, const Dist<K2>& q) {
  if (p.semiring() != q.semiring()) throw UsageError("tensor of distributions from different semirings");
  std::map<std::pair<K1, K2>, Scalar> acc;
  for (const auto& [x, a] : p) {
    for (const auto& [y, b] : q) acc.emplace(std::pair<K1, K2>{x, y}, mul(a, b));
  }
  return Dist<std::pair<K1, K2>>::from_weights(p.semiring(), std::move(acc));
}

/// (q * p)(f) = sum over g2 o g1 = f of q(g2) p(g1). `compose(g2, g1)` returns
/// nothing when the pair is not composable.
template <class K, class Compose>
Dist<K> convolve(const Dist<K>& q, const Dist<K>& p, Compose&& compose) {
  if (p.semiring() != q.semiring()) throw UsageError("convolution of distributions from different semirings");
  std::map<K, Scalar> acc;
  for (const auto& [g2, b] : q) {
    for (const auto& [g1, a] : p) {
      std::optional<K> f = compose(g2, g1);
      if (!f) continue;
      Scalar term = mul(b, a);
      auto [it, inserted] = acc.try_emplace(std::move(*f), term);
      if (!inserted) it->second = add(it->second, term);
    }
  }
  auto result = Dist<K>::try_from_weights(p.semiring(), std::move(acc));
  if (!result) throw ContractViolation("convolution result is not normalized (partial composition)");
  return std::move(*result);
}

/// Joint distribution on {(x1, x2) : f1(x1) = f2(x2)} with marginals p1 and p2:
/// weight p1(x1) p2(x2) / m(f1(x1)) where m is the common pushforward, and 0 on
/// fibers of m-weight zero.
template <class K1, class K2, class F1, class F2>
Dist<std::pair<K1, K2>> glue_pullback(const Dist<K1>& p1, const Dist<K2>& p2, F1&& f1, F2&& f2) {
  if (p1.semiring() != p2.semiring()) throw UsageError("gluing distributions from different semirings");
  const SemiringDesc desc = SemiringDesc::of(p1.semiring());
  if (!desc.zero_sum_free || !desc.is_division()) {
    throw Unsupported("gluing needs a zero-sum-free division semiring, got " + std::string(desc.name()));
  }
  auto m1 = pushforward(f1, p1);
  auto m2 = pushforward(f2, p2);
  if (!(m1 == m2)) throw PreconditionError("glue_pullback: the two pushforwards differ");

  std::map<std::pair<K1, K2>, Scalar> acc;
  for (const auto& [x1, a] : p1) {
    auto y1 = f1(x1);
    Scalar m = m1.weight(y1);
    if (m.is_zero()) continue;
    for (const auto& [x2, b] : p2) {
      if (!(f2(x2) == y1)) continue;
      acc.emplace(std::pair<K1, K2>{x1, x2}, div(mul(a, b), m));
    }
  }
  return Dist<std::pair<K1, K2>>::from_weights(p1.semiring(), std::move(acc));
}

}  // namespace simctx
