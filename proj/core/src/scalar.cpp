#include <smallgemm/error.hpp>
#include <smallgemm/scalar.hpp>

#include <string>

namespace smallgemm {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidTransChar: return "InvalidTransChar";
        case Errc::InvalidDimension: return "InvalidDimension";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::LdTooSmall: return "LdTooSmall";
        case Errc::Ld2TooSmall: return "Ld2TooSmall";
        case Errc::BufferOverrun: return "BufferOverrun";
        case Errc::OffsetCountMismatch: return "OffsetCountMismatch";
        case Errc::AliasedOutput: return "AliasedOutput";
        case Errc::OverlappingOutputs: return "OverlappingOutputs";
        case Errc::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

void raise(Errc code, std::string field, std::string_view detail) {
    std::string what{to_string(code)};
    what += " (";
    what += field;
    what += "): ";
    what += detail;
    throw Error(code, std::move(field), what);
}

char blas_letter(ScalarKind kind) noexcept {
    switch (kind) {
        case ScalarKind::SingleReal: return 's';
        case ScalarKind::DoubleReal: return 'd';
        case ScalarKind::SingleComplex: return 'c';
        case ScalarKind::DoubleComplex: return 'z';
    }
    return '?';
}

std::optional<ScalarKind> parse_scalar_kind(char letter) noexcept {
    switch (letter) {
        case 's': case 'S': return ScalarKind::SingleReal;
        case 'd': case 'D': return ScalarKind::DoubleReal;
        case 'c': case 'C': return ScalarKind::SingleComplex;
        case 'z': case 'Z': return ScalarKind::DoubleComplex;
        default: return std::nullopt;
    }
}

std::string_view to_string(ScalarKind kind) noexcept {
    switch (kind) {
        case ScalarKind::SingleReal: return "SingleReal";
        case ScalarKind::DoubleReal: return "DoubleReal";
        case ScalarKind::SingleComplex: return "SingleComplex";
        case ScalarKind::DoubleComplex: return "DoubleComplex";
    }
    return "Unknown";
}

char trans_letter(TransOp op) noexcept {
    switch (op) {
        case TransOp::None: return 'n';
        case TransOp::Transpose: return 't';
        case TransOp::ConjTranspose: return 'c';
    }
    return '?';
}

TransOp parse_trans(char c, std::string_view field) {
    switch (c) {
        case 'n': case 'N': return TransOp::None;
        case 't': case 'T': return TransOp::Transpose;
        case 'c': case 'C': return TransOp::ConjTranspose;
        default: break;
    }
    raise(Errc::InvalidTransChar, std::string(field),
          std::string("expected one of n, t, c but got '") + c + "'");
}

std::string_view to_string(AxpbyKind kind) noexcept {
    switch (kind) {
        case AxpbyKind::General: return "general";
        case AxpbyKind::A1B0: return "a1b0";
        case AxpbyKind::A1B1: return "a1b1";
        case AxpbyKind::AM1B0: return "am1b0";
    }
    return "unknown";
}

std::optional<AxpbyKind> parse_axpby_kind(std::string_view name) noexcept {
    for (auto k : all_axpby_kinds)
        if (to_string(k) == name)
            return k;
    return std::nullopt;
}

} // namespace smallgemm
