#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "config.hpp"

namespace weaktile::cli {

enum Exit : int { kOk = 0, kInternal = 1, kRejected = 2, kFailed = 3, kUnknown = 4 };

struct Context {
  std::string command_line;
  Config config;
};

struct ConstructArgs {
  std::uint32_t p = 0, q = 0;
  std::string b_file;  // empty: search
  std::string out = "instance";
};

struct CheckArgs {
  std::string property, set_file, out = ".";
  std::optional<std::uint64_t> budget;
};

struct VerifyArgs {
  std::string name, instance, mode = "exhaustive", out, candidate;
  std::uint64_t random_t = 0;
};

struct LiftArgs {
  std::string instance, out = "cubes.json", mode = "sampled:10000", w_mode = "sampled:1000";
  std::uint32_t k = 1;
};

struct SearchBArgs {
  std::uint32_t p = 5;
  std::size_t dim = 4;
  std::string out;
  std::optional<std::uint64_t> budget;
};

int cmd_construct(const Context& ctx, const ConstructArgs& a);
int cmd_check(const Context& ctx, const CheckArgs& a);
int cmd_verify(const Context& ctx, const VerifyArgs& a);
int cmd_lift(const Context& ctx, const LiftArgs& a);
int cmd_search_b(const Context& ctx, const SearchBArgs& a);

/// Runs fn and maps library exceptions onto exit codes.
int guarded(const std::function<int()>& fn);

}  // namespace weaktile::cli
