#pragma once

#include <smallgemm/layout.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace smallgemm::bench {

/// Deliberate breakage used to prove each check can fail.
enum class Fault { None, Oracle, Chunks, Interface, Beta, Padding, Flops };

std::optional<Fault> parse_fault(std::string_view name) noexcept;

struct VerifyOptions {
    std::uint64_t seed = 20130101;
    /// Matrices per configuration in the oracle sweep.
    index_t oracle_batch = 64;
    /// Matrices per configuration in the interface check.
    index_t interface_batch = 1000;
    Fault fault = Fault::None;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Oracle equivalence (with padding safety), chunk independence, interface
/// equivalence, beta elision and the flop model.
std::vector<CheckResult> run_verify(const VerifyOptions &opts);

} // namespace smallgemm::bench
