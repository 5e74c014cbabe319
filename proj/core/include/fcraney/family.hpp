#pragma once

namespace fcraney {

/// Distribution / sequence family selector used across the library.
enum class Family { fuss_catalan, raney };

}  // namespace fcraney
