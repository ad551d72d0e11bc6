#pragma once

#include <iosfwd>

namespace qdpas {

// Batch command-line driver. Subcommands:
//   solve     run one method on one instance file, print the run record
//   verify    cross-check random instances against the brute-force oracles
//   bench     instrumented sweeps, CSV with per-row complexity caps
//   audit     complexity-bound report (JSON; optionally appended to a CSV)
//   generate  emit a random instance document
//
// Exit codes: 0 success; 1 bad flags or unparseable input; 2 infeasible
// (optimum is +infinity / no feasible budget); 3 guard or overflow or
// internal-consistency stop; 4 verification found a mismatch.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qdpas
