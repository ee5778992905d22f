// Command-line front end; `aasynth` forwards argv here.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace aasynth {

/// Exit codes: 0 the rule holds, 1 it fails, 2 input or cap error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Directory of the bundled game files.
std::string default_corpus_dir();

}  // namespace aasynth
