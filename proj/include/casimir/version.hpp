#pragma once

// Engine version; cached CLI results are keyed on it.
#ifndef CASIMIR_ENGINE_VERSION
#define CASIMIR_ENGINE_VERSION "1.0.0"
#endif

namespace casimir {
inline constexpr const char* kEngineVersion = CASIMIR_ENGINE_VERSION;
}
