#pragma once

namespace lattes {

// Selects the OpenMP kernel or its serial reference implementation.
enum class Exec { serial, parallel };

} // namespace lattes
