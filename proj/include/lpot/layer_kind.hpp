#pragma once

#include <string>
#include <string_view>

namespace lpot {

enum class LayerKind { Single, Double };

inline const char* to_string(LayerKind kind) { return kind == LayerKind::Single ? "single" : "double"; }

/// Accepts "single" / "double" (also "sl" / "dl"); throws std::invalid_argument otherwise.
LayerKind parse_layer_kind(std::string_view text);

}  // namespace lpot
