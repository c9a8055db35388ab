#include "cohen/cache.hpp"

#include <fstream>

#include "json.hpp"

namespace cohen {

namespace {

nlohmann::ordered_json mode_json(const CoeffMode& mode) {
  if (!mode.modular()) return "Z";
  return nlohmann::ordered_json{{"p", mode.p}, {"r", mode.r}};
}

nlohmann::ordered_json header_json(const GroupContext& ctx) {
  return nlohmann::ordered_json{{"schema", 1},
                                {"n", ctx.n()},
                                {"mode", mode_json(ctx.mode())},
                                {"basis_order_hash", ctx.basis_order_hash()}};
}

}  // namespace

void save_structure_cache(const GroupContext& ctx, const std::string& path) {
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  auto snapshot = ctx.pair_cache_snapshot();  // already sorted by (i, j)
  for (const auto& [i, j, nf] : snapshot) {
    nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
    for (const auto& [idx, e] : nf.coeffs) coeffs.push_back({idx, e});
    entries.push_back(nlohmann::ordered_json{{"i", i}, {"j", j}, {"nf", coeffs}});
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array({header_json(ctx), entries});
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cache file: " + path);
  out << doc.dump(2) << "\n";
}

std::size_t load_structure_cache(const GroupContext& ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read cache file: " + path);
  nlohmann::json doc = nlohmann::json::parse(in);
  if (!doc.is_array() || doc.size() != 2)
    throw cache_mismatch_error("cache file is not a header/entries pair");
  const auto& header = doc[0];
  nlohmann::json expected = header_json(ctx);
  if (header != expected)
    throw cache_mismatch_error("cache header does not match this context");

  std::size_t loaded = 0;
  for (const auto& entry : doc[1]) {
    std::uint32_t i = entry.at("i").get<std::uint32_t>();
    std::uint32_t j = entry.at("j").get<std::uint32_t>();
    if (i >= ctx.basis_size() || j >= ctx.basis_size())
      throw cache_mismatch_error("cache entry outside the basis");
    NormalForm nf;
    for (const auto& c : entry.at("nf")) {
      std::uint32_t idx = c.at(0).get<std::uint32_t>();
      long long e = ctx.mode().canon(c.at(1).get<long long>());
      if (idx >= ctx.basis_size() || e == 0)
        throw cache_mismatch_error("cache entry outside the basis");
      nf.coeffs.emplace_back(idx, e);
    }
    ctx.store_pair(i, j, std::move(nf));
    ++loaded;
  }
  return loaded;
}

std::string cache_file_name(const GroupContext& ctx) {
  std::string mode = ctx.mode().modular()
                         ? "mod" + std::to_string(ctx.mode().p) + "_" + std::to_string(ctx.mode().r)
                         : "z";
  return "sc_n" + std::to_string(ctx.n()) + "_" + mode + "_" + ctx.basis_order_hash() + ".json";
}

}  // namespace cohen
