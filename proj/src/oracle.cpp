#include "tripartite/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "tripartite/errors.hpp"

namespace tripartite::oracle {

using cd = std::complex<double>;

void LinearNetwork::validate() const
{
    const std::size_t n = size();
    if (n == 0)
        throw DomainError("network has no modes");
    if (decay_rates.size() != n || couplings.size() != n * n)
        throw DomainError("network arrays do not match the mode count");
    if (port >= n)
        throw DomainError("port index out of range");
    for (double rate : decay_rates) {
        if (!(rate >= 0.0))
            throw DomainError("decay rates must be non-negative");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cd gij = coupling(i, j);
            const cd gji = coupling(j, i);
            if (std::abs(gij - std::conj(gji)) > 1e-12 * (1.0 + std::abs(gij)))
                throw DomainError("coupling matrix must be Hermitian");
        }
    }
}

std::vector<cd> solve_dense(std::vector<cd> a, std::vector<cd> b)
{
    const std::size_t n = b.size();
    if (a.size() != n * n)
        throw DomainError("matrix shape does not match right-hand side");

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            row += std::abs(a[i * n + j]);
        norm = std::max(norm, row);
    }

    double pivot_max = 0.0;
    double pivot_min = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(a[i * n + k]) > std::abs(a[best * n + k]))
                best = i;
        }
        if (best != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a[k * n + j], a[best * n + j]);
            std::swap(b[k], b[best]);
        }
        const double pivot = std::abs(a[k * n + k]);
        pivot_max = std::max(pivot_max, pivot);
        pivot_min = std::min(pivot_min, pivot);
        if (!(pivot > 1e-300) || pivot <= 1e-15 * norm) {
            std::ostringstream msg;
            msg << "singular linear system (pivot ratio estimate "
                << (pivot > 0.0 ? pivot_max / pivot : std::numeric_limits<double>::infinity()) << ")";
            throw SingularityError(msg.str(), std::numeric_limits<double>::quiet_NaN());
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const cd factor = a[i * n + k] / a[k * n + k];
            if (factor == cd(0.0, 0.0))
                continue;
            for (std::size_t j = k; j < n; ++j)
                a[i * n + j] -= factor * a[k * n + j];
            b[i] -= factor * b[k];
        }
    }

    std::vector<cd> x(n);
    for (std::size_t k = n; k-- > 0;) {
        cd acc = b[k];
        for (std::size_t j = k + 1; j < n; ++j)
            acc -= a[k * n + j] * x[j];
        x[k] = acc / a[k * n + k];
    }
    return x;
}

std::complex<double> port_resolvent(const LinearNetwork &net, double omega)
{
    net.validate();
    const std::size_t n = net.size();
    std::vector<cd> m(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j)
                m[i * n + j] = cd(0.5 * net.decay_rates[i], -(omega - net.frequencies[i]));
            else
                m[i * n + j] = cd(0.0, 1.0) * net.coupling(i, j);
        }
    }
    std::vector<cd> rhs(n, cd(0.0, 0.0));
    rhs[net.port] = 1.0;
    try {
        return solve_dense(std::move(m), std::move(rhs))[net.port];
    } catch (const SingularityError &e) {
        throw SingularityError(std::string(e.what()) + " at omega = " + std::to_string(omega), omega);
    }
}

std::complex<double> scattering_response(const LinearNetwork &net, double omega)
{
    return net.decay_rates[net.port] * port_resolvent(net, omega) - 1.0;
}

std::array<cd, 2> d_poles(double omega_c, double omega_m, double coupling, double kappa, double gamma)
{
    // (kappa/2 - i(w - wc)) = -i (w - p1) with p1 = wc - i kappa/2, so the
    // condition is (w - p1)(w - p2) = g^2, i.e. w^2 + B w + C = 0.
    const cd p1(omega_c, -0.5 * kappa);
    const cd p2(omega_m, -0.5 * gamma);
    const cd b = -(p1 + p2);
    const cd c = p1 * p2 - coupling * coupling;
    const cd disc = std::sqrt(b * b - 4.0 * c);
    // Pick the sign that avoids cancellation in b + sqrt(disc).
    const cd sum = (std::real(std::conj(b) * disc) >= 0.0) ? b + disc : b - disc;
    std::array<cd, 2> roots;
    if (sum == cd(0.0, 0.0)) {
        roots = {cd(0.0, 0.0), cd(0.0, 0.0)};
    } else {
        const cd q = -0.5 * sum;
        roots = {q, c / q};
    }
    if (roots[1].real() < roots[0].real())
        std::swap(roots[0], roots[1]);
    return roots;
}

namespace {

void require_symmetric(std::span<const double> a, std::size_t n)
{
    if (n == 0 || n > 8)
        throw DomainError("Jacobi oracle supports 1 <= n <= 8");
    if (a.size() != n * n)
        throw DomainError("matrix size does not match n");
    double scale = 0.0;
    for (double v : a)
        scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(a[i * n + j] - a[j * n + i]) > 1e-12 * std::max(scale, 1.0))
                throw DomainError("matrix is not symmetric");
        }
    }
}

} // namespace

SymmetricEigensystem dense_symmetric_eigensystem(std::span<const double> matrix, std::size_t n)
{
    require_symmetric(matrix, n);
    std::vector<double> a(matrix.begin(), matrix.end());
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        v[i * n + i] = 1.0;

    double frob = 0.0;
    for (double x : a)
        frob += x * x;
    frob = std::sqrt(frob);
    const double target = 1e-14 * frob;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j)
                    s += a[i * n + j] * a[i * n + j];
        return std::sqrt(s);
    };

    for (int sweep = 0; sweep < 100 && off_norm() > target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0)
                    continue;
                const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x * n + x] < a[y * n + y]; });

    SymmetricEigensystem out;
    out.values.resize(n);
    out.vectors.resize(n * n);
    for (std::size_t col = 0; col < n; ++col) {
        out.values[col] = a[order[col] * n + order[col]];
        for (std::size_t row = 0; row < n; ++row)
            out.vectors[row * n + col] = v[row * n + order[col]];
    }
    return out;
}

std::vector<double> dense_symmetric_eigenvalues(std::span<const double> matrix, std::size_t n)
{
    return dense_symmetric_eigensystem(matrix, n).values;
}

} // namespace tripartite::oracle
