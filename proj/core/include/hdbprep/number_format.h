#pragma once

#include <string>

namespace hdbprep {

/// Locale-independent rendering used by every output file.
///
/// Integral values print without a fractional part. Other values use the shortest decimal that
/// reads back to the same double, capped at 12 significant digits (so 1 + 0.7 + 0.5 prints as
/// 2.2), in plain positional notation for magnitudes in [1e-6, 1e15). The decimal separator is
/// always '.', with no grouping.
std::string format_number(double value);

} // namespace hdbprep
