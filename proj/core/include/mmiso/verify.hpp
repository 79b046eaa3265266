#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mmiso/orbits.hpp"

namespace mmiso {

struct VerifyOptions {
    Shape shape{2, 2, 2};
    FieldSpec field = FieldSpec::rationals();
    int samples = 25;
    std::uint64_t seed = 1;
    std::uint64_t budget = GroupEnumeration::default_budget;
};

enum class CheckStatus { Pass, Fail, Skip };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Skip;
    std::string detail;
};

/// Runs the cross-module identity checks at the given scale: sandwich and
/// transpose symmetries fixing the tensor, composition/inversion laws, the
/// conjugation table, the kernel characterization, identity-tensor and span
/// identities, structure-tensor and recovery round trips, and the
/// enumeration counts (finite fields only). Checks that do not apply to the
/// given shape/field are reported as skipped.
std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt);

bool all_passed(const std::vector<CheckResult>& results);

void print_report(std::ostream& os, const std::vector<CheckResult>& results);

} // namespace mmiso
