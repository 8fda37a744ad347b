#pragma once

// Single-qubit Kraus channels (phase damping, phase flip, bit flip) and their
// local action on three-qubit density matrices.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tangle/linalg.hpp"

namespace tangle {

enum class ChannelKind { PhaseDamping, PhaseFlip, BitFlip };

inline std::string_view to_string(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::PhaseDamping:
            return "phase-damping";
        case ChannelKind::PhaseFlip:
            return "phase-flip";
        case ChannelKind::BitFlip:
            return "bit-flip";
    }
    return "unknown";
}

inline std::optional<ChannelKind> parse_channel_kind(std::string_view s) {
    if (s == "phase-damping") return ChannelKind::PhaseDamping;
    if (s == "phase-flip") return ChannelKind::PhaseFlip;
    if (s == "bit-flip") return ChannelKind::BitFlip;
    return std::nullopt;
}

inline void require_probability(double p, const char *what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": decoherence parameter " + std::to_string(p) +
                                    " outside [0, 1]");
    }
}

/// Kraus elements of one single-qubit channel at decoherence parameter p.
class KrausSet {
public:
    KrausSet(ChannelKind kind, double p) : kind_(kind), p_(p) {
        require_probability(p, "KrausSet");
        const double keep = std::sqrt(1.0 - p);
        const double flip = std::sqrt(p);
        switch (kind) {
            case ChannelKind::PhaseDamping:
                elements_ = {ComplexMatrix::diagonal({1.0, keep}), ComplexMatrix::diagonal({0.0, flip})};
                break;
            case ChannelKind::PhaseFlip:
                elements_ = {keep * ComplexMatrix::identity(2), ComplexMatrix::diagonal({flip, -flip})};
                break;
            case ChannelKind::BitFlip:
                elements_ = {keep * ComplexMatrix::identity(2), ComplexMatrix::from_rows({{0.0, flip}, {flip, 0.0}})};
                break;
        }
    }

    ChannelKind kind() const noexcept { return kind_; }
    double p() const noexcept { return p_; }
    const std::vector<ComplexMatrix> &elements() const noexcept { return elements_; }

    /// Sum of E^dagger E over the elements; the identity for a valid set.
    ComplexMatrix completeness() const {
        ComplexMatrix sum(2);
        for (const auto &e : elements_) {
            sum += matmul(dagger(e), e);
        }
        return sum;
    }

private:
    ChannelKind kind_;
    double p_;
    std::vector<ComplexMatrix> elements_;
};

inline KrausSet kraus_single(ChannelKind kind, double p) { return KrausSet(kind, p); }

/// Embeds a 2x2 operator on `qubit` of a three-qubit register (Alice = 0).
inline ComplexMatrix lift(const ComplexMatrix &e, std::size_t qubit) {
    if (e.dim() != 2) {
        throw std::invalid_argument("lift: operator must be 2x2");
    }
    if (qubit > 2) {
        throw std::out_of_range("lift: qubit index " + std::to_string(qubit) + " out of range");
    }
    const auto id = ComplexMatrix::identity(2);
    std::array<const ComplexMatrix *, 3> slots{&id, &id, &id};
    slots[qubit] = &e;
    return kron(kron(*slots[0], *slots[1]), *slots[2]);
}

/// Which qubits see the channel, and how strongly. An empty slot is uncoupled.
class CouplingSpec {
public:
    CouplingSpec(ChannelKind kind, std::array<std::optional<double>, 3> per_qubit)
        : kind_(kind), per_qubit_(per_qubit) {
        bool any = false;
        for (const auto &p : per_qubit_) {
            if (p) {
                require_probability(*p, "CouplingSpec");
                any = true;
            }
        }
        if (!any) {
            throw std::invalid_argument("CouplingSpec: at least one qubit must be coupled");
        }
    }

    static CouplingSpec single(ChannelKind kind, std::size_t qubit, double p) {
        if (qubit > 2) {
            throw std::out_of_range("CouplingSpec::single: qubit index out of range");
        }
        std::array<std::optional<double>, 3> slots{};
        slots[qubit] = p;
        return CouplingSpec(kind, slots);
    }

    /// Equal-strength local channels on all three qubits.
    static CouplingSpec collective(ChannelKind kind, double p) { return CouplingSpec(kind, {p, p, p}); }

    static CouplingSpec explicit_params(ChannelKind kind, double p0, double p1, double p2) {
        return CouplingSpec(kind, {p0, p1, p2});
    }

    ChannelKind kind() const noexcept { return kind_; }
    const std::array<std::optional<double>, 3> &per_qubit() const noexcept { return per_qubit_; }

    /// Decoherence parameter of each qubit, 0 for uncoupled ones.
    std::array<double, 3> params() const noexcept {
        return {per_qubit_[0].value_or(0.0), per_qubit_[1].value_or(0.0), per_qubit_[2].value_or(0.0)};
    }

private:
    ChannelKind kind_;
    std::array<std::optional<double>, 3> per_qubit_;
};

/// rho_f = sum_{i,j,k} (K_i K_j K_k) rho (K_k^dag K_j^dag K_i^dag), K lifted from
/// the single-qubit Kraus sets of the coupled qubits; uncoupled qubits
/// contribute only the identity.
inline DensityMatrix apply_channel(const DensityMatrix &rho, const CouplingSpec &coupling) {
    if (rho.qubits() != 3) {
        throw std::invalid_argument("apply_channel: expected a 3-qubit state, got " + std::to_string(rho.qubits()));
    }
    std::array<std::vector<ComplexMatrix>, 3> lifted;
    for (std::size_t q = 0; q < 3; ++q) {
        const auto &p = coupling.per_qubit()[q];
        if (!p) {
            lifted[q].push_back(ComplexMatrix::identity(8));
            continue;
        }
        const KrausSet set(coupling.kind(), *p);
        for (const auto &e : set.elements()) {
            lifted[q].push_back(lift(e, q));
        }
    }

    ComplexMatrix out(8);
    for (const auto &ki : lifted[0]) {
        for (const auto &kj : lifted[1]) {
            const ComplexMatrix kij = matmul(ki, kj);
            for (const auto &kk : lifted[2]) {
                const ComplexMatrix k = matmul(kij, kk);
                out += matmul(matmul(k, rho.mat()), dagger(k));
            }
        }
    }
    return DensityMatrix(std::move(out));
}

}  // namespace tangle
