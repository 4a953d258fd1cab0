#pragma once

#define CITEKIT_VERSION "0.1.0"

namespace citekit {

inline const char* version() { return CITEKIT_VERSION; }

}  // namespace citekit
