#pragma once

namespace fsi {

/// Entry point of the fsi_bench tool. Exit codes: 0 success, 1 validation
/// or usage error, 2 solver failure.
int cli_main(int argc, const char* const* argv);

}  // namespace fsi
