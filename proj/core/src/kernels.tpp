// Definitions of the kernel entry points for one scalar type. Included by
// kernels_<letter>.cpp with SMALLGEMM_KERNEL_T defined, so each scalar type
// compiles in its own translation unit.

#include "kernel_impl.hpp"

#include <smallgemm/reference.hpp>

namespace smallgemm {

template <Scalar T>
void check_plan(const KernelPlan<T> &plan) {
    detail::check_plan_impl(plan);
}

namespace detail {

template <Scalar T>
void launch(const KernelPlan<T> &plan, const KernelArgs<T> &args,
            const UniformAddressing &addr) {
    select<T, UniformAddressing>(plan)(args, addr, plan.mode);
}

template <Scalar T>
void launch(const KernelPlan<T> &plan, const KernelArgs<T> &args,
            const HandleAddressing &addr) {
    select<T, HandleAddressing>(plan)(args, addr, plan.mode);
}

template <Scalar T>
void run_uniform_checked(const KernelPlan<T> &plan, KernelMethod expected,
                         std::span<const T> a, const UniformBatchDescriptor &da,
                         std::span<const T> b, const UniformBatchDescriptor &db,
                         std::span<T> c, const UniformBatchDescriptor &dc) {
    if (plan.method != expected)
        raise(Errc::InvalidArgument, "plan.method",
              std::string("plan selects ") +
                  std::string(to_string(plan.method)));
    check_plan_impl(plan);
    const index_t m = plan.m;
    check_shapes(plan.transa, plan.transb, m, m, m, da.rows, da.cols, db.rows,
                 db.cols, dc.rows, dc.cols);
    if (da.count != dc.count || db.count != dc.count)
        raise(Errc::InvalidArgument, "count",
              "A, B and C descriptors differ in count");
    validate(da, a.size(), "A");
    validate(db, b.size(), "B");
    validate(dc, c.size(), "C");
    if (dc.count == 0)
        return;
    KernelArgs<T> args{a.data(), b.data(), c.data(), da.ld, db.ld, dc.ld,
                       0,        dc.count};
    launch(plan, args,
           UniformAddressing{da.base, da.ld2, db.base, db.ld2, dc.base,
                             dc.ld2});
}

} // namespace detail

template <Scalar T>
void run_per_entry(const KernelPlan<T> &plan, std::span<const T> a,
                   const UniformBatchDescriptor &da, std::span<const T> b,
                   const UniformBatchDescriptor &db, std::span<T> c,
                   const UniformBatchDescriptor &dc) {
    detail::run_uniform_checked(plan, KernelMethod::PerEntry, a, da, b, db, c,
                                dc);
}

template <Scalar T>
void run_factorized(const KernelPlan<T> &plan, std::span<const T> a,
                    const UniformBatchDescriptor &da, std::span<const T> b,
                    const UniformBatchDescriptor &db, std::span<T> c,
                    const UniformBatchDescriptor &dc) {
    detail::run_uniform_checked(plan, KernelMethod::Factorized, a, da, b, db,
                                c, dc);
}

#define T SMALLGEMM_KERNEL_T
template void check_plan<T>(const KernelPlan<T> &);
template void run_per_entry<T>(const KernelPlan<T> &, std::span<const T>,
                               const UniformBatchDescriptor &,
                               std::span<const T>,
                               const UniformBatchDescriptor &, std::span<T>,
                               const UniformBatchDescriptor &);
template void run_factorized<T>(const KernelPlan<T> &, std::span<const T>,
                                const UniformBatchDescriptor &,
                                std::span<const T>,
                                const UniformBatchDescriptor &, std::span<T>,
                                const UniformBatchDescriptor &);
template void detail::launch<T>(const KernelPlan<T> &,
                                const detail::KernelArgs<T> &,
                                const detail::UniformAddressing &);
template void detail::launch<T>(const KernelPlan<T> &,
                                const detail::KernelArgs<T> &,
                                const detail::HandleAddressing &);
#undef T

} // namespace smallgemm
