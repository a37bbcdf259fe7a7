#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cottonlab/geometry/metric.hpp"

namespace cottonlab::cli {

/// A parsed spec file. Every expression is parsed when the file is loaded.
struct SpecFile {
  std::string name;
  geometry::MetricSpec metric;
  /// Periodic axes of the domain (used by quadrature).
  std::array<bool, 3> periodic{};
  std::optional<jets::Expr> conformal_factor;
  /// frame[3a + mu] = S_a^mu.
  std::optional<std::array<jets::Expr, 9>> frame;
  /// Lie group catalog key ("berger:t=2"); used by the variational suite.
  std::optional<std::string> group;
};

/// Parses spec-file JSON. `source` names the input in messages. Throws
/// SchemaError (with the offending key), SyntaxError, UnknownSymbol.
SpecFile parse_spec(const std::string& text, const std::string& source = "<string>");

/// Reads a spec file. A bare name that is not an existing file ("flat" or
/// "flat.json") resolves to the built-in catalog. Throws IoError.
SpecFile load_spec(const std::string& path);

/// The domain shrunk by 5% of its width on every side. Pointwise checks
/// sample here, away from chart boundaries where a metric may degenerate.
geometry::Box sampling_box(const geometry::Box& domain);

/// Names of the built-in specs.
std::vector<std::string> builtin_spec_names();

/// Runs one subcommand; args excludes the program name. Returns the exit
/// code: 0 success, 1 failed verification, 2 usage or input error,
/// 3 numeric error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cottonlab::cli
