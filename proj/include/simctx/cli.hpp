#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "simctx/semiring.hpp"

namespace simctx {

enum class Verb { Validate, Check, Cf, Strong, Wi, If, Isupp, Mult, Inverse, Vertices, Chsh, Realize, Homotopy, Glue };

Verb parse_verb(const std::string& name);
const std::vector<std::string>& verb_names();

enum class OutputFormat { Table, Json };

struct Command {
  Verb verb = Verb::Validate;
  std::vector<std::string> inputs;
  OutputFormat format = OutputFormat::Table;
  std::optional<SemiringKind> semiring;
  std::size_t cap = 32;
  std::optional<std::string> out;
  bool show_float = false;
  // homotopy: labelings such as "x=0,y=1"
  std::string from;
  std::string to;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int invalid = 1;  // input failed validation or a precondition
inline constexpr int usage = 2;
inline constexpr int unsupported = 3;
}  // namespace exit_code

/// Executes one command. Reports go to `out` (or the --out file), errors to `err`.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

}  // namespace simctx
