#pragma once

namespace pdc {

/// Selects between the OpenMP kernel and its serial reference. Both paths
/// produce bitwise-identical results; the serial one is kept for testing
/// and benchmarking.
enum class Exec { serial, parallel };

}  // namespace pdc
