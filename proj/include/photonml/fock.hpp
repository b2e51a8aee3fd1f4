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
 * Fock-space core: enumeration of the n-photon m-mode basis, matrix
 * permanents, and exact permanent-based evolution of multi-photon states
 * through linear optical mode unitaries.
 */

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

#include <photonml/common.hpp>

namespace photonml {

/// Mode-level m×m unitary (data encoder, trainable circuit, target, ...).
using ModeUnitary = CMatrix;

/// Unitary on the full n-photon Fock space, indexed by a FockBasis ordering.
using LiftedUnitary = CMatrix;

/// Amplitudes over a FockBasis; normalized to 1 in the 2-norm.
using StateVector = CVector;

/// Occupation-number state: photons per mode.
struct FockState {
    std::vector<int> occupations;

    int modes() const { return static_cast<int>(occupations.size()); }

    int total() const {
        int t = 0;
        for (int v : occupations) {
            t += v;
        }
        return t;
    }

    /// True when every mode holds at most one photon (valid input pattern).
    bool single_occupancy() const {
        for (int v : occupations) {
            if (v != 0 && v != 1) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const FockState&, const FockState&) = default;
};

/// n photons in the first n of m modes: the canonical input pattern.
inline FockState single_occupancy_input(int modes, int photons) {
    detail::require(modes >= 1, "single_occupancy_input: modes must be >= 1");
    detail::require(photons >= 0 && photons <= modes,
                    "single_occupancy_input: need 0 <= photons <= modes");
    FockState s{std::vector<int>(static_cast<std::size_t>(modes), 0)};
    for (int i = 0; i < photons; ++i) {
        s.occupations[static_cast<std::size_t>(i)] = 1;
    }
    return s;
}

inline std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

/**
 * Ordered basis of the n-photon subspace on m modes.
 *
 * States are enumerated in descending lexicographic order of their
 * occupation vectors, so (n,0,...,0) comes first and (0,...,0,n) last.
 * The ordering is the contract for every lifted matrix and state vector
 * in the library; it is deterministic so serialized results replay.
 */
class FockBasis {
public:
    FockBasis(int modes, int photons) : modes_(modes), photons_(photons) {
        detail::require(modes >= 1, "FockBasis: modes must be >= 1");
        detail::require(photons >= 0, "FockBasis: photons must be >= 0");
        enumerate();
        const std::size_t d = states_.size();
        occ_flat_.resize(d * static_cast<std::size_t>(modes_));
        mode_lists_.resize(d);
        norms_.resize(d);
        for (std::size_t z = 0; z < d; ++z) {
            const auto& occ = states_[z].occupations;
            double norm_sq = 1.0;
            for (int mode = 0; mode < modes_; ++mode) {
                const int c = occ[static_cast<std::size_t>(mode)];
                occ_flat_[z * static_cast<std::size_t>(modes_) + static_cast<std::size_t>(mode)] = c;
                for (int rep = 0; rep < c; ++rep) {
                    mode_lists_[z].push_back(mode);
                }
                for (int f = 2; f <= c; ++f) {
                    norm_sq *= f;
                }
            }
            norms_[z] = std::sqrt(norm_sq);
        }
    }

    int modes() const { return modes_; }
    int photons() const { return photons_; }
    int dim() const { return static_cast<int>(states_.size()); }

    const std::vector<FockState>& states() const { return states_; }
    const FockState& state(int index) const { return states_[static_cast<std::size_t>(index)]; }

    /// Occupation of `mode` in basis state `index` (flat, cache-friendly).
    int occupation(int index, int mode) const {
        return occ_flat_[static_cast<std::size_t>(index) * static_cast<std::size_t>(modes_) +
                         static_cast<std::size_t>(mode)];
    }

    /// State as a list of occupied mode indices with multiplicity (length n).
    const std::vector<int>& mode_list(int index) const {
        return mode_lists_[static_cast<std::size_t>(index)];
    }

    /// sqrt(prod_i occupations_i!) for basis state `index`.
    double sqrt_factorial(int index) const { return norms_[static_cast<std::size_t>(index)]; }

    /// Position of a state in the ordering; throws for foreign states.
    int index_of(const FockState& s) const {
        detail::require(s.modes() == modes_, "FockBasis::index_of: mode count mismatch");
        detail::require(s.total() == photons_, "FockBasis::index_of: photon count mismatch");
        const auto greater_lex = [](const FockState& a, const FockState& b) {
            return std::lexicographical_compare(b.occupations.begin(), b.occupations.end(),
                                                a.occupations.begin(), a.occupations.end());
        };
        const auto it = std::lower_bound(states_.begin(), states_.end(), s, greater_lex);
        detail::require(it != states_.end() && *it == s, "FockBasis::index_of: state not in basis");
        return static_cast<int>(it - states_.begin());
    }

private:
    void enumerate() {
        states_.reserve(binomial(modes_ + photons_ - 1, photons_));
        std::vector<int> current(static_cast<std::size_t>(modes_), 0);
        fill_from(current, 0, photons_);
    }

    void fill_from(std::vector<int>& current, int position, int remaining) {
        if (position == modes_ - 1) {
            current[static_cast<std::size_t>(position)] = remaining;
            states_.push_back(FockState{current});
            return;
        }
        for (int count = remaining; count >= 0; --count) {
            current[static_cast<std::size_t>(position)] = count;
            fill_from(current, position + 1, remaining - count);
        }
    }

    int modes_;
    int photons_;
    std::vector<FockState> states_;
    std::vector<int> occ_flat_;
    std::vector<std::vector<int>> mode_lists_;
    std::vector<double> norms_;
};

/// All weak compositions of `photons` into `modes` parts, descending lex.
inline FockBasis enumerate_basis(int modes, int photons) { return FockBasis(modes, photons); }

/**
 * Matrix permanent by Ryser's formula with Gray-code subset updates,
 * O(2^k k). Row sums are maintained incrementally as one column enters or
 * leaves the subset. Sized for k up to ~20; the empty matrix has
 * permanent 1 by convention.
 */
inline Complex permanent(const CMatrix& a) {
    detail::require(a.rows() == a.cols(), "permanent: matrix must be square");
    const int k = static_cast<int>(a.rows());
    if (k == 0) {
        return Complex(1.0, 0.0);
    }
    detail::require(k < 63, "permanent: dimension too large for subset enumeration");

    std::vector<Complex> row_sums(static_cast<std::size_t>(k), Complex(0.0, 0.0));
    Complex total(0.0, 0.0);
    std::uint64_t previous = 0;
    const std::uint64_t subsets = std::uint64_t(1) << k;
    for (std::uint64_t iter = 1; iter < subsets; ++iter) {
        const std::uint64_t gray = iter ^ (iter >> 1);
        const std::uint64_t changed = gray ^ previous;
        const int column = std::countr_zero(changed);
        const bool added = (gray & changed) != 0;
        previous = gray;
        for (int r = 0; r < k; ++r) {
            const Complex entry = a(r, column);
            row_sums[static_cast<std::size_t>(r)] += added ? entry : -entry;
        }
        Complex product(1.0, 0.0);
        for (int r = 0; r < k; ++r) {
            product *= row_sums[static_cast<std::size_t>(r)];
        }
        // overall sign is (-1)^k (-1)^{|S|} = (-1)^{k - |S|}
        if ((k - std::popcount(gray)) % 2 == 0) {
            total += product;
        } else {
            total -= product;
        }
    }
    return total;
}

namespace detail {

/// Permanent of u restricted to repeated rows/columns, already normalized.
inline Complex amplitude_from_lists(const CMatrix& u, const std::vector<int>& in_modes,
                                    const std::vector<int>& out_modes, double norm_product) {
    const int n = static_cast<int>(in_modes.size());
    CMatrix sub(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            sub(r, c) = u(out_modes[static_cast<std::size_t>(r)], in_modes[static_cast<std::size_t>(c)]);
        }
    }
    return permanent(sub) / norm_product;
}

}  // namespace detail

/**
 * Amplitude <out|Phi(u)|in> for Fock states `in`, `out` with equal photon
 * number: Per(u restricted to columns repeated per `in` and rows repeated
 * per `out`) / sqrt(prod in_i! prod out_j!).
 */
inline Complex transition_amplitude(const ModeUnitary& u, const FockState& in, const FockState& out) {
    const int m = static_cast<int>(u.rows());
    detail::require(u.rows() == u.cols(), "transition_amplitude: unitary must be square");
    detail::require(in.modes() == m && out.modes() == m,
                    "transition_amplitude: state length must match mode count");
    detail::require(in.total() == out.total(),
                    "transition_amplitude: photon number mismatch between input and output");

    std::vector<int> in_modes;
    std::vector<int> out_modes;
    double norm_sq = 1.0;
    for (int mode = 0; mode < m; ++mode) {
        const int ci = in.occupations[static_cast<std::size_t>(mode)];
        const int co = out.occupations[static_cast<std::size_t>(mode)];
        detail::require(ci >= 0 && co >= 0, "transition_amplitude: negative occupation");
        for (int rep = 0; rep < ci; ++rep) {
            in_modes.push_back(mode);
        }
        for (int rep = 0; rep < co; ++rep) {
            out_modes.push_back(mode);
        }
        for (int f = 2; f <= ci; ++f) {
            norm_sq *= f;
        }
        for (int f = 2; f <= co; ++f) {
            norm_sq *= f;
        }
    }
    return detail::amplitude_from_lists(u, in_modes, out_modes, std::sqrt(norm_sq));
}

/**
 * One column of the lifted unitary: the full output state reached from
 * basis state `in` under mode unitary u. This is the amplitude-on-demand
 * path; it avoids materializing the D×D lift when only one input is used.
 */
inline StateVector lifted_column(const ModeUnitary& u, const FockBasis& basis, const FockState& in) {
    detail::require(u.rows() == u.cols() && static_cast<int>(u.rows()) == basis.modes(),
                    "lifted_column: unitary dimension must match basis mode count");
    const int s = basis.index_of(in);
    const int d = basis.dim();
    StateVector out(d);
    const auto& in_modes = basis.mode_list(s);
    const double in_norm = basis.sqrt_factorial(s);
    for (int t = 0; t < d; ++t) {
        out(t) = detail::amplitude_from_lists(u, in_modes, basis.mode_list(t),
                                              in_norm * basis.sqrt_factorial(t));
    }
    return out;
}

/**
 * Dense lift of a mode unitary to the n-photon space: entry (t, s) is
 * transition_amplitude(u, basis.state(s), basis.state(t)). The lift is a
 * homomorphism, lift(UV) = lift(U) lift(V), and preserves unitarity.
 */
inline LiftedUnitary lift_unitary(const ModeUnitary& u, const FockBasis& basis) {
    detail::require(u.rows() == u.cols() && static_cast<int>(u.rows()) == basis.modes(),
                    "lift_unitary: unitary dimension must match basis mode count");
    const int d = basis.dim();
    LiftedUnitary lifted(d, d);
    for (int s = 0; s < d; ++s) {
        lifted.col(s) = lifted_column(u, basis, basis.state(s));
    }
    return lifted;
}

/// Photon-count probabilities p(z) = |<z|psi>|^2 over the basis ordering.
inline RVector output_distribution(const StateVector& psi, const FockBasis& basis) {
    detail::require(static_cast<int>(psi.size()) == basis.dim(),
                    "output_distribution: state dimension must match basis");
    detail::require(std::abs(psi.norm() - 1.0) <= 1e-6,
                    "output_distribution: state must be normalized");
    return psi.cwiseAbs2();
}

/// Diagonal of the photon-number operator for one mode, in basis order.
inline RVector number_operator_diagonal(int mode, const FockBasis& basis) {
    detail::require(mode >= 0 && mode < basis.modes(),
                    "number_operator_diagonal: mode index out of range");
    const int d = basis.dim();
    RVector diag(d);
    for (int z = 0; z < d; ++z) {
        diag(z) = static_cast<double>(basis.occupation(z, mode));
    }
    return diag;
}

}  // namespace photonml
