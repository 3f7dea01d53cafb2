#pragma once

#include "cli/run_config.hpp"
#include "markovpi/error.hpp"

#include <ostream>

namespace markovpi::cli {

/**
 * Executes one subcommand. Primary CSV output goes to cfg.output_path, or to
 * `out` when that is empty. Every artifact starts with `# key=value` lines
 * echoing describe(cfg).
 */
void run(const RunConfig& cfg, std::ostream& out);

/// Process exit status for an error category: 2 usage, 3 data, 4 numerical, 5 internal.
int exit_code(ErrorCategory category) noexcept;

}  // namespace markovpi::cli
