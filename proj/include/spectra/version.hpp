#ifndef SPECTRA_VERSION_HPP
#define SPECTRA_VERSION_HPP

namespace spectra {
inline constexpr const char* tool_version = "0.1.0";
}

#endif
