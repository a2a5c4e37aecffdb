#include "parityscope/parallel.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace pscope {

int worker_count() {
    if (const char* env = std::getenv("PARITY_SCOPE_WORKERS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return n;
        } catch (...) {
        }
    }
    return omp_get_num_procs();
}

WorkerScope::WorkerScope(int workers) : previous_(omp_get_max_threads()) {
    omp_set_num_threads(workers > 0 ? workers : 1);
}

WorkerScope::~WorkerScope() { omp_set_num_threads(previous_); }

} // namespace pscope
