#ifndef COHEN_CACHE_HPP
#define COHEN_CACHE_HPP

#include <stdexcept>
#include <string>

#include "cohen/collect.hpp"

namespace cohen {

struct cache_mismatch_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Structure-constant cache file: a two-element JSON array holding a
/// header {schema, n, mode, basis_order_hash} and the sorted pair
/// entries {i, j, nf}. The cache is a pure accelerator; contexts refuse
/// files whose header does not match.
void save_structure_cache(const GroupContext& ctx, const std::string& path);

/// Returns the number of entries loaded. Throws cache_mismatch_error on
/// a header mismatch and std::runtime_error on unreadable files.
std::size_t load_structure_cache(const GroupContext& ctx, const std::string& path);

/// Canonical file name for a context inside a cache directory.
std::string cache_file_name(const GroupContext& ctx);

}  // namespace cohen

#endif
