#pragma once

namespace dsearch {

/// Selects between the OpenMP kernels and their serial reference versions.
/// Both produce identical results; the serial path exists for testing and
/// benchmarking.
enum class Execution { serial, parallel };

}  // namespace dsearch
