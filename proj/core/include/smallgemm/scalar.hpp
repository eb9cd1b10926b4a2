#pragma once

#include <complex>
#include <concepts>
#include <optional>
#include <string_view>
#include <type_traits>

namespace smallgemm {

enum class ScalarKind { SingleReal, DoubleReal, SingleComplex, DoubleComplex };

enum class TransOp { None, Transpose, ConjTranspose };

inline constexpr ScalarKind all_scalar_kinds[] = {
    ScalarKind::SingleReal, ScalarKind::DoubleReal, ScalarKind::SingleComplex,
    ScalarKind::DoubleComplex};

inline constexpr TransOp all_trans_ops[] = {TransOp::None, TransOp::Transpose,
                                            TransOp::ConjTranspose};

constexpr bool is_complex(ScalarKind kind) noexcept {
    return kind == ScalarKind::SingleComplex ||
           kind == ScalarKind::DoubleComplex;
}

/// BLAS prefix letter: s, d, c or z.
char blas_letter(ScalarKind kind) noexcept;
std::optional<ScalarKind> parse_scalar_kind(char letter) noexcept;
std::string_view to_string(ScalarKind kind) noexcept;

/// 'n', 't' or 'c'.
char trans_letter(TransOp op) noexcept;
/// Case-insensitive [nN], [tT], [cC]; throws Error{InvalidTransChar} otherwise.
TransOp parse_trans(char c, std::string_view field = "trans");

// ---------------------------------------------------------------------------
// Scalar types

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<float> {
    using real_type                  = float;
    static constexpr ScalarKind kind = ScalarKind::SingleReal;
};
template <>
struct scalar_traits<double> {
    using real_type                  = double;
    static constexpr ScalarKind kind = ScalarKind::DoubleReal;
};
template <>
struct scalar_traits<std::complex<float>> {
    using real_type                  = float;
    static constexpr ScalarKind kind = ScalarKind::SingleComplex;
};
template <>
struct scalar_traits<std::complex<double>> {
    using real_type                  = double;
    static constexpr ScalarKind kind = ScalarKind::DoubleComplex;
};

template <class T>
concept Scalar = requires { scalar_traits<T>::kind; };

template <Scalar T>
inline constexpr ScalarKind scalar_kind_v = scalar_traits<T>::kind;

template <Scalar T>
inline constexpr bool is_complex_v = is_complex(scalar_kind_v<T>);

template <Scalar T>
using real_t = typename scalar_traits<T>::real_type;

/// Product with the plain four-multiply, two-add complex formula. Avoids the
/// Annex G inf/nan recovery path std::complex::operator* takes.
template <Scalar T>
constexpr T mul(const T &a, const T &b) noexcept {
    if constexpr (is_complex_v<T>)
        return {a.real() * b.real() - a.imag() * b.imag(),
                a.real() * b.imag() + a.imag() * b.real()};
    else
        return a * b;
}

template <Scalar T>
constexpr T conjugate(const T &x) noexcept {
    if constexpr (is_complex_v<T>)
        return {x.real(), -x.imag()};
    else
        return x;
}

// ---------------------------------------------------------------------------
// Entry-wise transforms applied to staged operands.

struct Identity {
    template <class T>
    constexpr T operator()(const T &a) const noexcept {
        return a;
    }
};

struct Conjugate {
    template <class T>
    constexpr T operator()(const T &a) const noexcept {
        return conjugate(a);
    }
};

// ---------------------------------------------------------------------------
// y <- a*x + b*y combination functors. `y` is the C entry, `x` the product.

template <Scalar T>
struct AxpbyGeneral {
    T a, b;
    constexpr void operator()(T &y, const T &x) const noexcept {
        y = mul(a, x) + mul(b, y);
    }
};

template <Scalar T>
struct AxpbyA1B0 {
    constexpr void operator()(T &y, const T &x) const noexcept { y = x; }
};

template <Scalar T>
struct AxpbyA1B1 {
    constexpr void operator()(T &y, const T &x) const noexcept { y = x + y; }
};

template <Scalar T>
struct AxpbyAM1B0 {
    constexpr void operator()(T &y, const T &x) const noexcept { y = -x; }
};

enum class AxpbyKind { General, A1B0, A1B1, AM1B0 };

inline constexpr AxpbyKind all_axpby_kinds[] = {
    AxpbyKind::General, AxpbyKind::A1B0, AxpbyKind::A1B1, AxpbyKind::AM1B0};

std::string_view to_string(AxpbyKind kind) noexcept;
std::optional<AxpbyKind> parse_axpby_kind(std::string_view name) noexcept;

/// Selects the C update rule. Special modes are explicit: General(1, 0) is
/// never silently promoted to A1B0.
template <Scalar T>
class AxpbyMode {
  public:
    static constexpr AxpbyMode general(T alpha, T beta) noexcept {
        return AxpbyMode{AxpbyKind::General, alpha, beta};
    }
    static constexpr AxpbyMode a1b0() noexcept {
        return AxpbyMode{AxpbyKind::A1B0, T(1), T(0)};
    }
    static constexpr AxpbyMode a1b1() noexcept {
        return AxpbyMode{AxpbyKind::A1B1, T(1), T(1)};
    }
    static constexpr AxpbyMode am1b0() noexcept {
        return AxpbyMode{AxpbyKind::AM1B0, T(-1), T(0)};
    }
    /// General mode uses the supplied scalars; the others ignore them.
    static constexpr AxpbyMode of(AxpbyKind kind, T alpha = T(1),
                                  T beta = T(0)) noexcept {
        switch (kind) {
            case AxpbyKind::A1B0: return a1b0();
            case AxpbyKind::A1B1: return a1b1();
            case AxpbyKind::AM1B0: return am1b0();
            case AxpbyKind::General: break;
        }
        return general(alpha, beta);
    }

    constexpr AxpbyKind kind() const noexcept { return kind_; }
    constexpr const T &alpha() const noexcept { return alpha_; }
    constexpr const T &beta() const noexcept { return beta_; }

    /// Calls `f` with the functor matching this mode.
    template <class F>
    constexpr decltype(auto) visit(F &&f) const {
        switch (kind_) {
            case AxpbyKind::A1B0: return f(AxpbyA1B0<T>{});
            case AxpbyKind::A1B1: return f(AxpbyA1B1<T>{});
            case AxpbyKind::AM1B0: return f(AxpbyAM1B0<T>{});
            case AxpbyKind::General: break;
        }
        return f(AxpbyGeneral<T>{alpha_, beta_});
    }

  private:
    constexpr AxpbyMode(AxpbyKind kind, T alpha, T beta) noexcept
        : kind_(kind), alpha_(alpha), beta_(beta) {}

    AxpbyKind kind_;
    T alpha_, beta_;
};

template <Scalar T>
constexpr T apply_axpby(const AxpbyMode<T> &mode, T y, const T &x) noexcept {
    mode.visit([&](auto f) { f(y, x); });
    return y;
}

} // namespace smallgemm
