#pragma once

namespace lvamp {

/// Parses argv and runs one subcommand. Exit codes: 0 success, 1 domain or
/// numerical error, 2 usage error.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace lvamp
