#ifndef SPECTRA_CLI_HPP
#define SPECTRA_CLI_HPP

namespace spectra::cli {

/// Entry point of the ensemble_spectra command-line tool.
/// Exit codes: 0 success, 1 check failure, 2 usage error.
int run(int argc, const char* const* argv);

} // namespace spectra::cli

#endif
