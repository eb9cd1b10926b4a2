#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace smallgemm {

/// All offsets, leading dimensions and lengths are counted in scalar
/// elements, never bytes.
using index_t = std::size_t;

/// A 3-D strided collection of equally sized column-major matrices. Entry
/// (i, j) of matrix p lives at `base + i + ld*j + ld2*p`.
struct UniformBatchDescriptor {
    index_t base  = 0;
    index_t rows  = 0;
    index_t cols  = 0;
    index_t ld    = 0;
    index_t ld2   = 0;
    index_t count = 0;

    /// Tightly packed layout: ld = rows, ld2 = rows * cols.
    static UniformBatchDescriptor packed(index_t rows, index_t cols,
                                         index_t count, index_t base = 0) {
        return {base, rows, cols, rows, rows * cols, count};
    }

    friend bool operator==(const UniformBatchDescriptor &,
                           const UniformBatchDescriptor &) = default;
};

/// Per-matrix base offsets into one buffer (the pointer-collection layout).
struct MatrixHandleBatch {
    std::vector<index_t> offsets;
    index_t rows = 0;
    index_t cols = 0;
    index_t ld   = 0;

    index_t count() const noexcept { return offsets.size(); }
};

/// Elements spanned by one matrix: ld*(cols-1) + rows, or 0 when empty.
index_t matrix_footprint(index_t rows, index_t cols, index_t ld) noexcept;

/// One past the last element touched by the batch (relative to the buffer
/// start); `base` when the batch is empty. Throws BufferOverrun on overflow.
index_t required_length(const UniformBatchDescriptor &d);

/// Throws IndexOutOfRange when (i, j, p) is outside the descriptor.
index_t element_offset(const UniformBatchDescriptor &d, index_t i, index_t j,
                       index_t p);

/// Checks ld >= rows, ld2 >= ld*cols and that the footprint fits in
/// `buffer_len`. Throws Error{LdTooSmall | Ld2TooSmall | BufferOverrun}; the
/// error's field is prefixed with `name` (e.g. "C.ld2").
void validate(const UniformBatchDescriptor &d, index_t buffer_len,
              std::string_view name = "");

/// ld >= rows and every matrix footprint fits in `buffer_len`.
void validate(std::span<const index_t> offsets, index_t rows, index_t cols,
              index_t ld, index_t buffer_len, std::string_view name = "");
inline void validate(const MatrixHandleBatch &h, index_t buffer_len,
                     std::string_view name = "") {
    validate(h.offsets, h.rows, h.cols, h.ld, buffer_len, name);
}

/// Throws OverlappingOutputs if any two matrices share an element. Exact for
/// interleaved layouts (two matrices may live in each other's ld padding).
void check_disjoint(std::span<const index_t> offsets, index_t rows,
                    index_t cols, index_t ld, std::string_view name = "");

/// True if the element sets of two equally shaped matrices intersect.
bool footprints_overlap(index_t offset_a, index_t offset_b, index_t rows,
                        index_t cols, index_t ld) noexcept;

MatrixHandleBatch as_handles(const UniformBatchDescriptor &d);

} // namespace smallgemm
