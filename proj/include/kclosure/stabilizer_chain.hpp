#pragma once

/**
 * @file stabilizer_chain.hpp
 * @brief Deterministic Schreier-Sims.
 *
 * Level i holds base point b_i, a generating set S_i of the pointwise
 * stabilizer G_{b_0..b_{i-1}} and the transversal of the b_i-orbit of
 * <S_i>. A caller-supplied base prefix is used verbatim; further base
 * points are the least point moved by the element that needs them.
 */

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "permutation.hpp"

namespace kclosure {

class StabilizerChain {
 public:
  struct Level {
    Point base_point = 0;
    std::vector<Permutation> generators;
    std::vector<Point> orbit;
    /// transversal[p] maps base_point to p, when p is in the orbit.
    std::vector<std::optional<Permutation>> transversal;
  };

  StabilizerChain(std::size_t degree, std::span<const Permutation> generators,
                  std::span<const Point> base_prefix = {})
      : degree_(degree) {
    std::vector<Permutation> gens;
    for (const auto &g : generators) {
      if (g.degree() != degree)
        throw InputError("generator degree " + std::to_string(g.degree()) +
                         " differs from group degree " + std::to_string(degree));
      if (!g.is_identity()) gens.push_back(g);
    }
    for (Point b : base_prefix) {
      if (b >= degree) throw InputError("base point out of range");
      Level level;
      level.base_point = b;
      levels_.push_back(std::move(level));
    }
    for (const auto &g : gens) {
      if (fixes_base(g, levels_.size())) append_level(first_moved(g));
    }
    // S_i = generators fixing the first i base points
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      for (const auto &g : gens)
        if (fixes_base(g, i)) levels_[i].generators.push_back(g);
      rebuild_orbit(i);
    }
    run();
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t depth() const noexcept { return levels_.size(); }
  const std::vector<Level> &levels() const noexcept { return levels_; }

  std::vector<Point> base() const {
    std::vector<Point> out;
    for (const auto &l : levels_) out.push_back(l.base_point);
    return out;
  }

  /// Product of orbit lengths from `from_level` down.
  std::uint64_t order(std::size_t from_level = 0) const {
    std::uint64_t result = 1;
    for (std::size_t i = from_level; i < levels_.size(); ++i)
      result = detail::checked_mul(result, levels_[i].orbit.size(), "group order");
    return result;
  }

  /// Sifts x from `from_level`; returns the residue and the level at which
  /// sifting stopped (depth() when it went through every level).
  std::pair<Permutation, std::size_t> sift(Permutation x,
                                           std::size_t from_level = 0) const {
    for (std::size_t i = from_level; i < levels_.size(); ++i) {
      const auto &u = levels_[i].transversal[x[levels_[i].base_point]];
      if (!u) return {std::move(x), i};
      x *= u->inverse();
    }
    return {std::move(x), levels_.size()};
  }

  bool contains(const Permutation &x) const {
    if (x.degree() != degree_)
      throw InputError("degree mismatch in membership test");
    auto [residue, level] = sift(x);
    return level == levels_.size() && residue.is_identity();
  }

  /// Generators of the pointwise stabilizer of the first `level` base points.
  std::vector<Permutation> stabilizer_generators(std::size_t level) const {
    if (level >= levels_.size()) return {};
    return levels_[level].generators;
  }

 private:
  bool fixes_base(const Permutation &g, std::size_t count) const {
    for (std::size_t i = 0; i < count; ++i)
      if (g[levels_[i].base_point] != levels_[i].base_point) return false;
    return true;
  }

  static Point first_moved(const Permutation &g) {
    for (Point p = 0; p < g.degree(); ++p)
      if (g[p] != p) return p;
    return 0;
  }

  void append_level(Point base_point) {
    Level level;
    level.base_point = base_point;
    level.transversal.assign(degree_, std::nullopt);
    level.transversal[base_point] = Permutation(degree_);
    level.orbit = {base_point};
    levels_.push_back(std::move(level));
  }

  void rebuild_orbit(std::size_t i) {
    auto &level = levels_[i];
    level.transversal.assign(degree_, std::nullopt);
    level.transversal[level.base_point] = Permutation(degree_);
    level.orbit = {level.base_point};
    for (std::size_t j = 0; j < level.orbit.size(); ++j) {
      Point beta = level.orbit[j];
      for (const auto &s : level.generators) {
        Point image = s[beta];
        if (!level.transversal[image]) {
          level.transversal[image] = *level.transversal[beta] * s;
          level.orbit.push_back(image);
        }
      }
    }
  }

  // Sims' verification loop: every Schreier generator of level i must
  // sift through levels i+1.. before moving up to level i-1.
  void run() {
    std::size_t i = levels_.size();
    while (i > 0) {
      std::size_t level = i - 1;
      bool extended = false;
      for (std::size_t o = 0; o < levels_[level].orbit.size() && !extended; ++o) {
        Point beta = levels_[level].orbit[o];
        for (std::size_t gi = 0; gi < levels_[level].generators.size(); ++gi) {
          const Permutation &s = levels_[level].generators[gi];
          const auto &u_beta = *levels_[level].transversal[beta];
          const auto &u_image = *levels_[level].transversal[s[beta]];
          Permutation schreier = u_beta * s * u_image.inverse();
          if (schreier.is_identity()) continue;
          auto [residue, stop] = sift(std::move(schreier), level + 1);
          if (residue.is_identity()) continue;
          if (stop == levels_.size()) append_level(first_moved(residue));
          for (std::size_t l = level + 1; l <= stop; ++l) {
            levels_[l].generators.push_back(residue);
            rebuild_orbit(l);
          }
          i = stop + 1;
          extended = true;
          break;
        }
      }
      if (!extended) --i;
    }
  }

  std::size_t degree_;
  std::vector<Level> levels_;
};

}  // namespace kclosure
