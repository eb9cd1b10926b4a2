#include "kernel_impl.hpp"

namespace smallgemm {

std::string_view to_string(KernelMethod method) noexcept {
    return method == KernelMethod::PerEntry ? "per-entry" : "factorized";
}

std::optional<KernelMethod> parse_kernel_method(std::string_view s) noexcept {
    if (s == "per-entry")
        return KernelMethod::PerEntry;
    if (s == "factorized")
        return KernelMethod::Factorized;
    return std::nullopt;
}

FactorPair factorize(index_t m) {
    if (m < 1 || m > max_kernel_size)
        raise(Errc::InvalidArgument, "m", "factorize covers sizes 1..16");
    return detail::factorize_ct(m);
}

KernelMethod default_method(index_t m) noexcept {
    return m == 15 || m == 16 ? KernelMethod::Factorized
                              : KernelMethod::PerEntry;
}

} // namespace smallgemm
