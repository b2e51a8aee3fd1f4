// Copyright 2026 The photonml developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Shared numeric aliases, seed derivation and a small parallel map
 * used across the library.
 */

#pragma once

#include <atomic>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace photonml {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition) {
        throw std::invalid_argument(message);
    }
}

}  // namespace detail

/// Largest absolute entry; zero for empty matrices.
inline double max_abs(const CMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

inline double max_abs(const RMatrix& a) {
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

/// Checks U†U == I entrywise within `tol` (max-norm).
inline bool is_unitary(const CMatrix& u, double tol = 1e-12) {
    if (u.rows() != u.cols()) {
        return false;
    }
    CMatrix gram = u.adjoint() * u;
    gram.diagonal().array() -= 1.0;
    return max_abs(gram) <= tol;
}

/**
 * Deterministic stream splitting (splitmix64 finalizer). Every parallel
 * cell derives its own seed from (master, coordinates) so results do not
 * depend on scheduling or execution order.
 */
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t z = master;
    z += 0x9e3779b97f4a7c15ULL * (a + 1);
    z += 0x517cc1b727220a95ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Worker count for sweeps; PHOTONML_WORKERS overrides hardware concurrency.
inline int worker_count() {
    if (const char* env = std::getenv("PHOTONML_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/**
 * Runs fn(0..count-1) on a pool of threads. Cells must be independent and
 * write only to their own slot; under that contract the outcome is identical
 * for any worker count. The first exception thrown by a cell is rethrown
 * on the calling thread.
 */
template <typename Fn>
void parallel_for(int count, Fn&& fn, int workers = 0) {
    if (count <= 0) {
        return;
    }
    if (workers <= 0) {
        workers = worker_count();
    }
    workers = std::min(workers, count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<int> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto body = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back(body);
    }
    for (auto& th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

}  // namespace photonml
