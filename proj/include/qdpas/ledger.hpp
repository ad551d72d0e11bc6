#pragma once

#include <cstdint>
#include <vector>

namespace qdpas {

// Separates the three kinds of work the solvers do: classical DP cell
// evaluations, emulated quantum oracle queries (charged by the cost model in
// qsim), and QRAM traffic. Counters are monotone within a run.
struct ledger_call {
    std::uint64_t domain = 0;  // search domain size N of one qmf/grover call
    int level = 0;             // nesting level, 0 = top
};

struct query_ledger {
    std::uint64_t classical_ops = 0;
    std::uint64_t quantum_queries = 0;
    std::uint64_t qram_writes = 0;
    std::uint64_t qram_reads = 0;
    std::vector<ledger_call> calls;

    void log_call(std::uint64_t domain, int level) { calls.push_back({domain, level}); }
};

}  // namespace qdpas
