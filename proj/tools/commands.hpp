#ifndef BSW_TOOLS_COMMANDS_HPP_
#define BSW_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bsw::cli {

  // Process exit codes.
  enum Exit : int {
    kOk       = 0,
    kMismatch = 1,  // verify-fixtures found a difference
    kParse    = 2,
    kValidity = 3,
    kUnknown  = 4,  // a validity verdict is Unknown and --assume-valid is off
  };

  struct Options {
    std::optional<std::size_t> level;
    std::vector<long long>     n;
    std::optional<std::uint64_t> seed;
    long long                  budget = 20;
    std::string                p;
    std::string                embeddings;
    std::string                word;
    std::string                flat;
    bool                       assume_valid = false;
    bool                       emit         = false;
    std::filesystem::path      fixtures;
  };

  struct Outcome {
    int         code = kOk;
    std::string out;
    std::string err;
  };

  std::vector<std::string> command_names();
  // input is the tower spec file, or unused for verify-fixtures.
  Outcome run(std::string const& command, std::string const& input, Options const& opts);

  // BSW_FIXTURES, then the directory configured at build time.
  std::filesystem::path default_fixture_dir();

}  // namespace bsw::cli

#endif  // BSW_TOOLS_COMMANDS_HPP_
