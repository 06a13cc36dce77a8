#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_impl.hpp"
#include "qpg/simd/kernels.hpp"

namespace qpg::simd {
namespace detail {
#if !defined(QPG_HAVE_AVX2)
const KernelTable* avx2_table() { return nullptr; }
#endif
#if !defined(QPG_HAVE_NEON)
const KernelTable* neon_table() { return nullptr; }
#endif
}  // namespace detail

namespace {

bool cpu_supports(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return true;
        case Backend::Avx2:
#if defined(QPG_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
            return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
            return false;
#endif
        case Backend::Neon:
#if defined(QPG_HAVE_NEON)
            return true;
#else
            return false;
#endif
    }
    return false;
}

const detail::KernelTable& table_for(Backend b) {
    if (!cpu_supports(b)) {
        throw std::invalid_argument("simd backend not available: " + std::string(backend_name(b)));
    }
    switch (b) {
        case Backend::Avx2:
            return *detail::avx2_table();
        case Backend::Neon:
            return *detail::neon_table();
        case Backend::Scalar:
            break;
    }
    return detail::scalar_table();
}

Backend select_backend() {
    const auto avail = available_backends();
    if (const char* forced = std::getenv("QPG_SIMD")) {
        for (Backend b : avail) {
            if (backend_name(b) == forced) return b;
        }
    }
    return avail.back();
}

const double* raw(std::span<const cplx> v) { return reinterpret_cast<const double*>(v.data()); }
double* raw(std::span<cplx> v) { return reinterpret_cast<double*>(v.data()); }

void require_same(std::size_t a, std::size_t b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

std::string_view backend_name(Backend b) {
    switch (b) {
        case Backend::Scalar:
            return "scalar";
        case Backend::Avx2:
            return "avx2";
        case Backend::Neon:
            return "neon";
    }
    return "unknown";
}

std::vector<Backend> available_backends() {
    std::vector<Backend> out{Backend::Scalar};
    for (Backend b : {Backend::Avx2, Backend::Neon}) {
        if (cpu_supports(b)) out.push_back(b);
    }
    return out;
}

Backend active_backend() {
    static const Backend chosen = select_backend();
    return chosen;
}

cplx dot_conj(Backend be, std::span<const cplx> a, std::span<const cplx> b) {
    require_same(a.size(), b.size(), "dot_conj");
    double out[2];
    table_for(be).dot_conj(raw(a), raw(b), a.size(), out);
    return {out[0], out[1]};
}

double norm_sq(Backend be, std::span<const cplx> a) { return table_for(be).norm_sq(raw(a), a.size()); }

void scale(Backend be, std::span<cplx> a, double s) { table_for(be).scale(raw(a), a.size(), s); }

void axpy(Backend be, cplx s, std::span<const cplx> x, std::span<cplx> y) {
    require_same(x.size(), y.size(), "axpy");
    table_for(be).axpy(s.real(), s.imag(), raw(x), raw(y), x.size());
}

void sinc_phase_mul(Backend be, std::span<const double> x, std::span<const cplx> amp,
                    std::span<cplx> out) {
    require_same(x.size(), amp.size(), "sinc_phase_mul");
    require_same(x.size(), out.size(), "sinc_phase_mul");
    table_for(be).sinc_phase_mul(x.data(), raw(amp), raw(out), x.size());
}

void sellmeier_wavenumber(Backend be, const SellmeierPoles& poles, std::span<const double> omega,
                          std::span<double> k) {
    require_same(omega.size(), k.size(), "sellmeier_wavenumber");
    table_for(be).sellmeier_wavenumber(poles, omega.data(), k.data(), omega.size());
}

}  // namespace qpg::simd
