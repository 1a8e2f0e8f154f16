#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fricke::cli {

// 0 success, 1 negative verdict (family-check --expect, cm zero value),
// 2 usage, 3 precision, 4 internal consistency failure.
enum ExitCode : int { Ok = 0, Negative = 1, Usage = 2, Precision = 3, Internal = 4 };

// args excludes the program name. The defaults header goes to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fricke::cli
