#pragma once
// Brute-force recomputation of a functor chain one multidegree at a time.
//
// Nothing here uses the pattern encoding. The innermost stage works with the
// monomial basis of R and its localizations. Every later stage keeps its
// cohomology as explicit subquotients per multidegree with explicit
// multiplication maps, and localizes by following multiplication chains until
// they stabilize.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "grf/cech.hpp"
#include "grf/linalg.hpp"
#include "grf/pattern_module.hpp"

namespace grf {

namespace detail {

class OracleLayer {
 public:
  virtual ~OracleLayer() = default;
  /// dim (M_V)_a
  virtual std::size_t local_dim(const Multidegree& a, Pattern v) = 0;
  /// x_i : (M_V)_a -> (M_V)_{a+e_i}
  virtual FpMatrix local_mul(int i, const Multidegree& a, Pattern v) = 0;
  /// natural map (M_V)_a -> (M_W)_a for V ⊆ W
  virtual FpMatrix local_map(const Multidegree& a, Pattern v, Pattern w) = 0;
};

// R and R_V in the monomial basis: x^a ∈ R_V iff a_i >= 0 for every i ∉ V.
class FreeLayer final : public OracleLayer {
 public:
  explicit FreeLayer(std::uint32_t p) : p_(p) {}

  std::size_t local_dim(const Multidegree& a, Pattern v) override {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] < 0 && !contains(v, static_cast<int>(i))) return 0;
    return 1;
  }

  FpMatrix local_mul(int i, const Multidegree& a, Pattern v) override {
    Multidegree b = a;
    ++b[i];
    return unit_or_zero(local_dim(b, v), local_dim(a, v));
  }

  FpMatrix local_map(const Multidegree& a, Pattern v, Pattern w) override {
    return unit_or_zero(local_dim(a, w), local_dim(a, v));
  }

 private:
  FpMatrix unit_or_zero(std::size_t rows, std::size_t cols) const {
    return rows && cols ? FpMatrix::identity(1, p_) : FpMatrix(rows, cols, p_);
  }

  std::uint32_t p_;
};

// H^slot of the Čech complex of the lower layer on the given generators,
// computed separately at each multidegree.
class CohomologyLayer final : public OracleLayer {
 public:
  CohomologyLayer(OracleLayer& lower, const MonomialIdeal& ideal, std::size_t slot, long long stabilization)
      : lower_(lower), p_(ideal.ring().p()), slot_(slot), k_(stabilization) {
    const std::size_t r = ideal.generators().size();
    for (std::size_t t = 0; t <= r; ++t) {
      subsets_.push_back(subsets_of_size(r, t));
      supports_.emplace_back();
      for (const auto& s : subsets_.back()) {
        Pattern v = 0;
        for (auto k : s)
          for (std::size_t i = 0; i < ideal.generators()[k].size(); ++i)
            if (ideal.generators()[k][i] > 0) v |= Pattern{1} << i;
        supports_.back().push_back(v);
      }
    }
  }

  std::size_t dim(const Multidegree& a) { return piece(a).dim; }

  FpMatrix mul(int i, const Multidegree& a) {
    auto key = std::make_pair(i, a);
    if (auto it = mul_memo_.find(key); it != mul_memo_.end()) return it->second;
    const Piece& src = piece(a);
    Multidegree b = a;
    ++b[i];
    const Piece& dst = piece(b);
    FpMatrix result(dst.dim, src.dim, p_);
    if (src.dim && dst.dim) {
      std::vector<FpMatrix> blocks;
      for (auto v : supports_[slot_]) blocks.push_back(lower_.local_mul(i, a, v));
      FpMatrix image = FpMatrix::block_diagonal(blocks, p_) * src.reps;
      auto x = solve(dst.basis, image);
      if (!x) throw Error(Errc::Internal, "oracle: multiplication leaves the cycle space");
      result = x->row_block(dst.boundary_rank, dst.dim);
    }
    mul_memo_.emplace(key, result);
    return result;
  }

  std::size_t local_dim(const Multidegree& a, Pattern v) override {
    const Multidegree b = push(a, v);
    check_stable(b, v);
    return dim(b);
  }

  FpMatrix local_mul(int i, const Multidegree& a, Pattern v) override { return mul(i, push(a, v)); }

  FpMatrix local_map(const Multidegree& a, Pattern v, Pattern w) override {
    Multidegree b = push(a, v);
    FpMatrix map = FpMatrix::identity(dim(b), p_);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!contains(w, static_cast<int>(i)) || contains(v, static_cast<int>(i))) continue;
      for (long long step = 0; step < k_; ++step) {
        map = mul(static_cast<int>(i), b) * map;
        ++b[i];
      }
    }
    return map;
  }

 private:
  struct Piece {
    std::size_t dim = 0;
    std::size_t boundary_rank = 0;
    FpMatrix reps;   // cycle representatives, columns in C^slot_a coordinates
    FpMatrix basis;  // [boundary basis | reps]
  };

  Multidegree push(const Multidegree& a, Pattern v) const {
    Multidegree b = a;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (contains(v, static_cast<int>(i))) b[i] += k_;
    return b;
  }

  // The colimit representative at b is only trusted if one more multiplication
  // by Π_{i∈V} x_i is an isomorphism.
  void check_stable(const Multidegree& b, Pattern v) {
    if (v == 0) return;
    Multidegree c = b;
    FpMatrix map = FpMatrix::identity(dim(b), p_);
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (!contains(v, static_cast<int>(i))) continue;
      map = mul(static_cast<int>(i), c) * map;
      ++c[i];
    }
    if (map.rows() != map.cols() || rank(map) != map.cols())
      throw Error(Errc::BoxTooSmall, "localization did not stabilize within " + std::to_string(k_) + " steps");
  }

  FpMatrix differential(const Multidegree& a, std::size_t t) {
    std::vector<std::size_t> src_offset, dst_offset;
    std::size_t src_dim = 0, dst_dim = 0;
    for (auto v : supports_[t]) src_offset.push_back(src_dim), src_dim += lower_.local_dim(a, v);
    for (auto v : supports_[t + 1]) dst_offset.push_back(dst_dim), dst_dim += lower_.local_dim(a, v);
    FpMatrix d(dst_dim, src_dim, p_);
    for (std::size_t x = 0; x < subsets_[t].size(); ++x)
      for (std::size_t y = 0; y < subsets_[t + 1].size(); ++y) {
        const auto& s = subsets_[t][x];
        const auto& u = subsets_[t + 1][y];
        // u must equal s plus one extra index j
        std::vector<std::size_t> extra;
        bool superset = true;
        for (auto e : s) superset = superset && std::find(u.begin(), u.end(), e) != u.end();
        if (!superset) continue;
        for (auto e : u)
          if (std::find(s.begin(), s.end(), e) == s.end()) extra.push_back(e);
        const std::size_t j = extra.front();
        const auto below = std::count_if(s.begin(), s.end(), [j](std::size_t e) { return e < j; });
        FpMatrix block = lower_.local_map(a, supports_[t][x], supports_[t + 1][y]);
        if (below % 2 == 1) block = FpMatrix(block.rows(), block.cols(), p_) - block;
        d.paste(block, dst_offset[y], src_offset[x]);
      }
    return d;
  }

  std::size_t term_dim(const Multidegree& a, std::size_t t) {
    std::size_t total = 0;
    for (auto v : supports_[t]) total += lower_.local_dim(a, v);
    return total;
  }

  const Piece& piece(const Multidegree& a) {
    if (auto it = pieces_.find(a); it != pieces_.end()) return it->second;
    Piece pc;
    const std::size_t r = subsets_.size() - 1;
    if (slot_ <= r) {
      const std::size_t here = term_dim(a, slot_);
      FpMatrix cycles = slot_ < r ? reduce(differential(a, slot_)).kernel : FpMatrix::identity(here, p_);
      FpMatrix boundaries = slot_ > 0 ? differential(a, slot_ - 1) : FpMatrix(here, 0, p_);
      // greedy: boundary columns first, then cycle columns that raise the rank
      FpMatrix basis(here, 0, p_);
      std::size_t current = 0;
      auto try_add = [&](const FpMatrix& column) {
        FpMatrix candidate = FpMatrix::hstack(basis, column);
        std::size_t rk = rank(candidate);
        if (rk > current) {
          basis = std::move(candidate);
          current = rk;
          return true;
        }
        return false;
      };
      for (std::size_t c = 0; c < boundaries.cols(); ++c) try_add(boundaries.column_block(c, 1));
      pc.boundary_rank = current;
      pc.reps = FpMatrix(here, 0, p_);
      for (std::size_t c = 0; c < cycles.cols(); ++c) {
        FpMatrix column = cycles.column_block(c, 1);
        if (try_add(column)) pc.reps = FpMatrix::hstack(pc.reps, column);
      }
      pc.basis = basis;
      pc.dim = pc.reps.cols();
    }
    return pieces_.emplace(a, std::move(pc)).first->second;
  }

  OracleLayer& lower_;
  std::uint32_t p_;
  std::size_t slot_;
  long long k_;
  std::vector<std::vector<std::vector<std::size_t>>> subsets_;
  std::vector<std::vector<Pattern>> supports_;
  std::map<Multidegree, Piece> pieces_;
  std::map<std::pair<int, Multidegree>, FpMatrix> mul_memo_;
};

}  // namespace detail

/// Evaluates the final module of a chain at single multidegrees, using
/// `stabilization` multiplication steps to represent every localization.
class ChainOracle {
 public:
  ChainOracle(const FunctorChain& chain, long long stabilization) : ring_(chain.ring) {
    chain.validate();
    layers_.push_back(std::make_unique<detail::FreeLayer>(chain.ring.p()));
    for (const auto& stage : chain.stages) add(stage.ideal, static_cast<std::size_t>(stage.slot), stabilization);
    add(MonomialIdeal::maximal(chain.ring), static_cast<std::size_t>(chain.final_slot), stabilization);
  }

  std::size_t dimension(const Multidegree& a) {
    if (static_cast<int>(a.size()) != ring_.n()) throw Error(Errc::InvalidInput, "multidegree length");
    return last_->dim(a);
  }

 private:
  void add(const MonomialIdeal& ideal, std::size_t slot, long long stabilization) {
    auto layer = std::make_unique<detail::CohomologyLayer>(*layers_.back(), ideal, slot, stabilization);
    last_ = layer.get();
    layers_.push_back(std::move(layer));
  }

  RingSpec ring_;
  std::vector<std::unique_ptr<detail::OracleLayer>> layers_;
  detail::CohomologyLayer* last_ = nullptr;
};

/// Dimensions of the final module of `chain` at each point, all inside [-bound, bound]^n.
/// The stabilization length starts at `bound` and grows until one extra step
/// changes no answer.
inline std::vector<std::size_t> oracle_dimensions(const FunctorChain& chain, const std::vector<Multidegree>& points,
                                                  long long bound, long long max_bound = 64) {
  for (const auto& a : points)
    for (long long v : a)
      if (v < -bound || v > bound)
        throw Error(Errc::BoxTooSmall, "multidegree outside the box [-" + std::to_string(bound) + ", " +
                                           std::to_string(bound) + "]");
  auto evaluate = [&](long long k) -> std::optional<std::vector<std::size_t>> {
    try {
      ChainOracle oracle(chain, k);
      std::vector<std::size_t> out;
      for (const auto& a : points) out.push_back(oracle.dimension(a));
      return out;
    } catch (const Error& e) {
      if (e.code() != Errc::BoxTooSmall) throw;
      return std::nullopt;
    }
  };
  auto previous = evaluate(bound);
  for (long long k = bound + 1; k <= max_bound; ++k) {
    auto next = evaluate(k);
    if (previous && next && *previous == *next) return *previous;
    previous = std::move(next);
  }
  throw Error(Errc::BoxTooSmall, "oracle did not stabilize up to " + std::to_string(max_bound) + " steps");
}

inline std::size_t oracle_dimension(const FunctorChain& chain, const Multidegree& a, long long bound) {
  return oracle_dimensions(chain, {a}, bound).front();
}

}  // namespace grf
