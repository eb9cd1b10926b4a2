#include <smallgemm/error.hpp>
#include <smallgemm/layout.hpp>

#include <algorithm>
#include <string>

namespace smallgemm {

namespace {

std::string qualify(std::string_view name, std::string_view field) {
    if (name.empty())
        return std::string(field);
    std::string s(name);
    s += '.';
    s += field;
    return s;
}

index_t checked_mul(index_t a, index_t b, std::string_view name) {
    index_t r;
    if (__builtin_mul_overflow(a, b, &r))
        raise(Errc::BufferOverrun, qualify(name, "count"),
              "footprint overflows index type");
    return r;
}

index_t checked_add(index_t a, index_t b, std::string_view name) {
    index_t r;
    if (__builtin_add_overflow(a, b, &r))
        raise(Errc::BufferOverrun, qualify(name, "count"),
              "footprint overflows index type");
    return r;
}

} // namespace

index_t matrix_footprint(index_t rows, index_t cols, index_t ld) noexcept {
    if (rows == 0 || cols == 0)
        return 0;
    return ld * (cols - 1) + rows;
}

index_t required_length(const UniformBatchDescriptor &d) {
    const index_t fp = matrix_footprint(d.rows, d.cols, d.ld);
    if (d.count == 0 || fp == 0)
        return d.base;
    const index_t last = checked_mul(d.ld2, d.count - 1, "");
    return checked_add(checked_add(d.base, last, ""), fp, "");
}

index_t element_offset(const UniformBatchDescriptor &d, index_t i, index_t j,
                       index_t p) {
    if (i >= d.rows)
        raise(Errc::IndexOutOfRange, "i",
              std::to_string(i) + " >= rows " + std::to_string(d.rows));
    if (j >= d.cols)
        raise(Errc::IndexOutOfRange, "j",
              std::to_string(j) + " >= cols " + std::to_string(d.cols));
    if (p >= d.count)
        raise(Errc::IndexOutOfRange, "p",
              std::to_string(p) + " >= count " + std::to_string(d.count));
    return d.base + i + d.ld * j + d.ld2 * p;
}

void validate(const UniformBatchDescriptor &d, index_t buffer_len,
              std::string_view name) {
    if (d.ld < d.rows || d.ld == 0)
        raise(Errc::LdTooSmall, qualify(name, "ld"),
              "ld = " + std::to_string(d.ld) + " < max(1, rows = " +
                  std::to_string(d.rows) + ")");
    const index_t min_ld2 = checked_mul(d.ld, d.cols, name);
    if (d.ld2 < min_ld2 || d.ld2 == 0)
        raise(Errc::Ld2TooSmall, qualify(name, "ld2"),
              "ld2 = " + std::to_string(d.ld2) + " < max(1, ld*cols = " +
                  std::to_string(min_ld2) + ")");
    const index_t need = required_length(d);
    if (d.count > 0 && need > buffer_len)
        raise(Errc::BufferOverrun, qualify(name, "buffer"),
              "batch needs " + std::to_string(need) +
                  " elements but buffer holds " + std::to_string(buffer_len));
}

void validate(std::span<const index_t> offsets, index_t rows, index_t cols,
              index_t ld, index_t buffer_len, std::string_view name) {
    if (ld < rows || ld == 0)
        raise(Errc::LdTooSmall, qualify(name, "ld"),
              "ld = " + std::to_string(ld) + " < max(1, rows = " +
                  std::to_string(rows) + ")");
    const index_t fp = matrix_footprint(rows, cols, ld);
    if (fp == 0)
        return;
    for (index_t p = 0; p < offsets.size(); ++p) {
        if (offsets[p] > buffer_len || buffer_len - offsets[p] < fp)
            raise(Errc::BufferOverrun, qualify(name, "offsets"),
                  "matrix " + std::to_string(p) + " at offset " +
                      std::to_string(offsets[p]) + " needs " +
                      std::to_string(fp) + " elements, buffer holds " +
                      std::to_string(buffer_len));
    }
}

bool footprints_overlap(index_t offset_a, index_t offset_b, index_t rows,
                        index_t cols, index_t ld) noexcept {
    if (rows == 0 || cols == 0)
        return false;
    if (offset_a > offset_b)
        std::swap(offset_a, offset_b);
    // Shared element iff d = di + ld*dj with |di| < rows, 0 <= dj < cols.
    // Since ld >= rows, only dj = q (di = r) or dj = q + 1 (di = r - ld) can
    // work, where d = q*ld + r.
    const index_t d = offset_b - offset_a;
    const index_t q = d / ld, r = d % ld;
    if (q < cols && r < rows)
        return true;
    return q + 1 < cols && ld - r < rows;
}

void check_disjoint(std::span<const index_t> offsets, index_t rows,
                    index_t cols, index_t ld, std::string_view name) {
    const index_t fp = matrix_footprint(rows, cols, ld);
    if (fp == 0 || offsets.size() < 2)
        return;
    std::vector<index_t> sorted(offsets.begin(), offsets.end());
    std::ranges::sort(sorted);
    for (index_t a = 0; a + 1 < sorted.size(); ++a) {
        for (index_t b = a + 1;
             b < sorted.size() && sorted[b] - sorted[a] < fp; ++b) {
            if (footprints_overlap(sorted[a], sorted[b], rows, cols, ld))
                raise(Errc::OverlappingOutputs, qualify(name, "offsets"),
                      "matrices at offsets " + std::to_string(sorted[a]) +
                          " and " + std::to_string(sorted[b]) +
                          " share elements");
        }
    }
}

MatrixHandleBatch as_handles(const UniformBatchDescriptor &d) {
    MatrixHandleBatch h{{}, d.rows, d.cols, d.ld};
    h.offsets.reserve(d.count);
    for (index_t p = 0; p < d.count; ++p)
        h.offsets.push_back(d.base + d.ld2 * p);
    return h;
}

} // namespace smallgemm
