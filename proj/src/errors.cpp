#include "repcut/errors.hpp"

namespace repcut {

const char* to_string(CornerKind kind) noexcept {
    switch (kind) {
        case CornerKind::interior: return "interior";
        case CornerKind::all_risky: return "all_risky";
        case CornerKind::all_safe: return "all_safe";
        case CornerKind::indeterminate: return "indeterminate";
    }
    return "?";
}

}  // namespace repcut
