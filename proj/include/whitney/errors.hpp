#pragma once

#include <stdexcept>
#include <string>

namespace whitney {

/// Domain error with a machine-readable kind tag. The CLI prints these as
/// single-line records `error kind=<kind> detail=<what>`.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& detail)
        : std::runtime_error(detail), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

inline Error bound_exceeded(const std::string& detail) { return Error("bound-exceeded", detail); }
inline Error dimension_mismatch(const std::string& detail) { return Error("dimension-mismatch", detail); }
inline Error unmatched_point(const std::string& detail) { return Error("unmatched-point", detail); }
inline Error unsupported_feature(const std::string& detail) { return Error("unsupported-feature", detail); }
inline Error non_invariant(const std::string& detail) { return Error("non-invariant", detail); }
inline Error conflicting_extension(const std::string& detail) { return Error("conflicting-extension", detail); }
inline Error parse_error(const std::string& detail) { return Error("parse-error", detail); }
inline Error mode_error(const std::string& detail) { return Error("mode-error", detail); }
inline Error domain_error(const std::string& detail) { return Error("domain-error", detail); }
inline Error internal_inconsistency(const std::string& detail) { return Error("internal-inconsistency", detail); }

} // namespace whitney
