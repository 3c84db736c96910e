#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace gridlock {

struct CliEnvironment {
    std::istream &in;
    std::ostream &out;
    std::ostream &err;
    // Cache used when neither --cache-dir nor $GRIDLOCK_CACHE_DIR is given.
    std::filesystem::path default_cache_dir;
};

// args excludes the program name. Returns 0 on success, 1 when a
// verification fails, 2 on usage errors.
int run_cli(const std::vector<std::string> &args, const CliEnvironment &env);

} // namespace gridlock
