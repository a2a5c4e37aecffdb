#pragma once

namespace pscope {

/// Worker count from PARITY_SCOPE_WORKERS, else the OpenMP default.
int worker_count();

/// Sets the OpenMP thread count for the lifetime of the guard.
class WorkerScope {
public:
    explicit WorkerScope(int workers);
    ~WorkerScope();

    WorkerScope(const WorkerScope&) = delete;
    WorkerScope& operator=(const WorkerScope&) = delete;

private:
    int previous_;
};

} // namespace pscope
