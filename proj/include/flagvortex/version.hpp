#pragma once

#define FLAGVORTEX_VERSION_MAJOR 0
#define FLAGVORTEX_VERSION_MINOR 1
#define FLAGVORTEX_VERSION_PATCH 0

namespace flagvortex {

inline const char* version_string() { return "0.1.0"; }

}  // namespace flagvortex
