#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "bhk/chain.hpp"

namespace bhk::detail {

using Blocks = std::vector<std::vector<std::optional<ModuleMap>>>;
using PartsFn = std::function<std::vector<ModulePtr>(int)>;

inline Blocks empty_blocks(std::size_t rows, std::size_t cols) {
  return Blocks(rows, std::vector<std::optional<ModuleMap>>(cols));
}

inline Blocks one_block(std::size_t rows, std::size_t cols, std::size_t r, std::size_t c, ModuleMap m) {
  Blocks bl = empty_blocks(rows, cols);
  bl[r][c] = std::move(m);
  return bl;
}

/// Summand k in degree n is parts[k].module(n - shifts[k]).
inline PartsFn parts_of(std::vector<ChainComplex> parts, std::vector<int> shifts) {
  return [parts = std::move(parts), shifts = std::move(shifts)](int n) {
    std::vector<ModulePtr> out;
    for (std::size_t k = 0; k < parts.size(); ++k) out.push_back(parts[k].module(n - shifts[k]));
    return out;
  };
}

inline PartsFn single(const ChainComplex& c) { return parts_of({c}, {0}); }
inline PartsFn cone_parts(const ChainMap& f) { return parts_of({f.target(), f.source()}, {0, 1}); }
inline PartsFn cylinder_parts(const ChainMap& f) { return parts_of({f.source(), f.target(), f.source()}, {0, 0, 1}); }

inline ModuleMap id_at(const ChainComplex& c, int n) { return ModuleMap::identity(c.module(n)); }

/// Family src_n -> dst_{n+degree} assembled from blocks in each nonzero degree.
inline GradedMap layout_map(const ChainComplex& src, const PartsFn& src_parts, const ChainComplex& dst,
                            const PartsFn& dst_parts, int degree, const std::function<Blocks(int)>& blocks,
                            const std::string& name) {
  std::map<int, ModuleMap> parts;
  for (int n = src.lo(); n <= src.hi(); ++n) {
    if (src.module(n)->is_zero_module()) continue;
    parts.emplace(n, block_map(src.module(n), src_parts(n), dst.module(n + degree), dst_parts(n + degree), blocks(n)));
  }
  return GradedMap(src, dst, degree, std::move(parts), name);
}

}  // namespace bhk::detail
