#pragma once

namespace spantube {

/// Absolute tolerance used for coincidence tests (crossings, event ties,
/// closed coverage comparisons). Defaults to 1e-9; the environment variable
/// SPANTUBE_TOLERANCE overrides it once, at first use.
double tolerance();

/// Replaces the process-wide tolerance. Intended for the CLI and tests.
void set_tolerance(double tau);

}  // namespace spantube
