#pragma once

namespace tw {

/// Execution policy for the data-parallel kernels. Every kernel produces
/// bit-identical results under both policies: parallel loops either have
/// fully independent iterations or use a fixed partial-sum structure, so
/// results do not depend on the thread count.
enum class Exec {
    serial,
    parallel,
};

int hardware_threads();

}  // namespace tw
