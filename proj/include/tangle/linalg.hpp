#pragma once

// Dense complex linear algebra for few-qubit states: Kronecker and matrix
// products, partial trace, partial transpose, Hermitian eigenvalues and the
// trace norm.
//
// Qubit ordering: qubit 0 is the most significant bit of a basis index, so for
// three qubits |i0 i1 i2> has index 4*i0 + 2*i1 + i2.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tangle/tolerances.hpp"

namespace tangle {

using Complex = std::complex<double>;

class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
        if (dim == 0) {
            throw std::invalid_argument("ComplexMatrix: dimension must be at least 1");
        }
    }

    ComplexMatrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), data_(std::move(entries)) {
        if (dim == 0) {
            throw std::invalid_argument("ComplexMatrix: dimension must be at least 1");
        }
        if (data_.size() != dim * dim) {
            throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                                        std::to_string(data_.size()));
        }
    }

    /// Row-major literal, e.g. from_rows({{0, 1}, {1, 0}}).
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        ComplexMatrix m(rows.size());
        std::size_t i = 0;
        for (const auto &row : rows) {
            if (row.size() != rows.size()) {
                throw std::invalid_argument("ComplexMatrix::from_rows: matrix must be square");
            }
            std::size_t j = 0;
            for (const auto &v : row) {
                m(i, j++) = v;
            }
            ++i;
        }
        return m;
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> diag) {
        ComplexMatrix m(diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<Complex> diag) {
        return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
    }

    std::size_t dim() const noexcept { return dim_; }

    Complex &operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
    const Complex &operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * dim_ + j]; }

    std::span<const Complex> entries() const noexcept { return data_; }

    Complex trace() const noexcept {
        Complex t = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    bool is_finite() const noexcept {
        return std::all_of(data_.begin(), data_.end(),
                           [](const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
    }

    /// Largest |a(i,j) - conj(a(j,i))|.
    double hermiticity_defect() const noexcept {
        double worst = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = i; j < dim_; ++j) {
                worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
            }
        }
        return worst;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other) {
        require_same_dim(other, "operator+=");
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += other.data_[k];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &other) {
        require_same_dim(other, "operator-=");
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= other.data_[k];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex s) noexcept {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

    bool operator==(const ComplexMatrix &) const = default;

private:
    void require_same_dim(const ComplexMatrix &other, const char *what) const {
        if (other.dim_ != dim_) {
            throw std::invalid_argument(std::string("ComplexMatrix::") + what + ": dimension mismatch (" +
                                        std::to_string(dim_) + " vs " + std::to_string(other.dim_) + ")");
        }
    }

    std::size_t dim_;
    std::vector<Complex> data_;
};

/// Largest entrywise |a - b|.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t n = a.dim();
    const std::size_t m = b.dim();
    ComplexMatrix out(n * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) {
                continue;
            }
            for (std::size_t k = 0; k < m; ++k) {
                for (std::size_t l = 0; l < m; ++l) {
                    out(i * m + k, j * m + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("matmul: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                    std::to_string(b.dim()) + ")");
    }
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix dagger(const ComplexMatrix &a) {
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

/// Number of qubits n with 2^n == dim; throws if dim is not a power of two.
inline std::size_t qubits_for_dim(std::size_t dim) {
    if (!std::has_single_bit(dim)) {
        throw std::invalid_argument("dimension " + std::to_string(dim) + " is not a power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(dim));
}

/// Eigenvalues of a Hermitian matrix in ascending order.
///
/// Cyclic Jacobi: each rotation first removes the phase of the pivot a(p,q)
/// with a diagonal unitary, then zeroes it with a real Givens rotation. Sweeps
/// stop once the off-diagonal Frobenius norm drops below tol::jacobi_off_norm.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix &h) {
    if (!h.is_finite()) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix has non-finite entries");
    }
    if (h.hermiticity_defect() > tol::eig_input_hermitian) {
        throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");
    }
    const std::size_t n = h.dim();
    ComplexMatrix a = h;
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
    }

    auto off_norm = [&a, n] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    s += std::norm(a(i, j));
                }
            }
        }
        return std::sqrt(s);
    };

    bool converged = false;
    for (int sweep = 0; sweep <= tol::jacobi_max_sweeps; ++sweep) {
        if (off_norm() < tol::jacobi_off_norm) {
            converged = true;
            break;
        }
        if (sweep == tol::jacobi_max_sweeps) {
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) {
                    continue;
                }
                const Complex phase = apq / mag;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- A G with G(p,p)=c, G(p,q)=s, G(q,p)=-s e^{-i phi}, G(q,q)=c e^{-i phi}.
                const Complex cphase = std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * cphase * akq;
                    a(k, q) = s * akp + c * cphase * akq;
                }
                // A <- G^dagger A.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }
    if (!converged) {
        throw std::runtime_error("hermitian_eigenvalues: Jacobi iteration did not converge");
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = a(i, i).real();
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
inline double trace_norm(const ComplexMatrix &h) {
    double s = 0.0;
    for (double v : hermitian_eigenvalues(h)) {
        s += std::abs(v);
    }
    return s;
}

/// A validated n-qubit density matrix: Hermitian, unit trace and positive
/// semidefinite within the tolerances of tangle::tol.
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix mat) : qubits_(qubits_for_dim(mat.dim())), mat_(std::move(mat)) {
        if (!mat_.is_finite()) {
            throw std::invalid_argument("DensityMatrix: non-finite entries");
        }
        if (mat_.hermiticity_defect() > tol::hermitian) {
            throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
        }
        if (std::abs(mat_.trace() - Complex{1.0}) > tol::unit_trace) {
            throw std::invalid_argument("DensityMatrix: trace differs from 1");
        }
        const auto eig = hermitian_eigenvalues(mat_);
        if (eig.front() < tol::psd_floor) {
            throw std::invalid_argument("DensityMatrix: negative eigenvalue " + std::to_string(eig.front()));
        }
    }

    std::size_t qubits() const noexcept { return qubits_; }
    std::size_t dim() const noexcept { return mat_.dim(); }
    const ComplexMatrix &mat() const noexcept { return mat_; }
    Complex operator()(std::size_t i, std::size_t j) const noexcept { return mat_(i, j); }

    double purity() const { return matmul(mat_, mat_).trace().real(); }

private:
    std::size_t qubits_;
    ComplexMatrix mat_;
};

/// Bit mask of basis-index bits belonging to the given qubit (qubit 0 = MSB).
inline std::size_t qubit_bit(std::size_t qubits, std::size_t qubit) {
    if (qubit >= qubits) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                                std::to_string(qubits) + " qubits");
    }
    return std::size_t{1} << (qubits - 1 - qubit);
}

/// Partial transpose of an n-qubit operator over every qubit in `subsystems`.
inline ComplexMatrix partial_transpose(const ComplexMatrix &m, std::span<const std::size_t> subsystems) {
    const std::size_t n = qubits_for_dim(m.dim());
    std::size_t mask = 0;
    for (std::size_t q : subsystems) {
        mask |= qubit_bit(n, q);
    }
    const std::size_t dim = m.dim();
    ComplexMatrix out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            const std::size_t src_row = (i & ~mask) | (j & mask);
            const std::size_t src_col = (j & ~mask) | (i & mask);
            out(i, j) = m(src_row, src_col);
        }
    }
    return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix &rho, std::size_t subsystem) {
    const std::size_t one[] = {subsystem};
    if (subsystem >= rho.qubits()) {
        throw std::out_of_range("partial_transpose: subsystem " + std::to_string(subsystem) + " out of range");
    }
    return partial_transpose(rho.mat(), one);
}

/// Reduced density matrix over `keep` (strictly increasing qubit indices),
/// kept qubits retain their relative order.
inline DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    const std::size_t n = rho.qubits();
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: keep set is empty");
    }
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (keep[k] >= n) {
            throw std::invalid_argument("partial_trace: qubit " + std::to_string(keep[k]) + " out of range");
        }
        if (k > 0 && keep[k] <= keep[k - 1]) {
            throw std::invalid_argument("partial_trace: keep set must be strictly increasing");
        }
    }
    std::size_t keep_mask = 0;
    for (std::size_t q : keep) {
        keep_mask |= qubit_bit(n, q);
    }
    const std::size_t trace_mask = (rho.dim() - 1) & ~keep_mask;

    // Compress the kept bits of a full index into a reduced index.
    auto reduce = [&](std::size_t idx) {
        std::size_t r = 0;
        for (std::size_t q : keep) {
            r = (r << 1) | ((idx & qubit_bit(n, q)) ? 1u : 0u);
        }
        return r;
    };

    ComplexMatrix out(std::size_t{1} << keep.size());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            if ((i & trace_mask) == (j & trace_mask)) {
                out(reduce(i), reduce(j)) += rho(i, j);
            }
        }
    }
    return DensityMatrix(std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

}  // namespace tangle
