#pragma once

namespace nav {

/// Selects between the serial reference loop and the OpenMP loop of a
/// data-parallel kernel. Both produce bit-identical results.
enum class Exec { Serial, Parallel };

}  // namespace nav
