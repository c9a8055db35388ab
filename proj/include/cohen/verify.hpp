#ifndef COHEN_VERIFY_HPP
#define COHEN_VERIFY_HPP

#include <cstdint>
#include <string>

#include "json.hpp"

namespace cohen::verify {

inline constexpr const char* kToolVersion = "0.1.0";

/// Drives one verification run. Claim names:
///   q1 q2 engel shuffle pr lemma22 lemma23 lemma25 lemma26
///   prop27-np2 prop27-np1 cor28 remark-r1 consistency all
struct Options {
  std::string claim = "all";
  int n = 0;  // 0: the claim's default range
  std::uint32_t p = 3;
  std::uint32_t r = 2;
  bool profile_explicit = false;  // p or r given on the command line
  int kmax = 12;
  int l = 0;  // 0: all applicable
  std::string mode;  // "", "z" or "mod": restrict the coefficient modes
  int jobs = 1;
  int trials = 500;
  std::uint64_t seed = 0xC0DE5EEDULL;
  std::string cache_dir;  // warm structure-constant caches live here
};

struct RunManifest {
  std::string tool_version;
  std::string timestamp;
  nlohmann::ordered_json options;
  nlohmann::ordered_json reports;
  int verified = 0;
  int falsified = 0;
  int inconclusive = 0;
  int errors = 0;
  std::string overall;  // pass | mixed | fail
};

RunManifest run(const Options& opt);

nlohmann::ordered_json manifest_json(const RunManifest& m);
std::string manifest_string(const RunManifest& m);

/// 0 for pass or mixed, 1 for fail.
int exit_code(const RunManifest& m);

bool claim_known(const std::string& claim);

}  // namespace cohen::verify

#endif
