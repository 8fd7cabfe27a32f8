#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qladder {

/// Raised when a parameter set makes some denominator of the construction
/// vanish. Carries the human-readable name of every offending factor.
class AdmissibilityError : public std::domain_error {
public:
    explicit AdmissibilityError(std::vector<std::string> factors)
        : std::domain_error(format(factors)), factors_(std::move(factors))
    {
    }

    [[nodiscard]] const std::vector<std::string>& factors() const { return factors_; }

private:
    static std::string format(const std::vector<std::string>& factors)
    {
        std::string msg = "inadmissible parameters: vanishing factor";
        msg += factors.size() == 1 ? " " : "s ";
        for (std::size_t i = 0; i < factors.size(); ++i) {
            if (i > 0) {
                msg += ", ";
            }
            msg += factors[i];
        }
        return msg;
    }

    std::vector<std::string> factors_;
};

/// Collects vanishing factors and throws once, listing all of them.
class AdmissibilityCollector {
public:
    template <class F>
    void require_nonzero(const F& value, const std::string& name)
    {
        if (value == F(0)) {
            factors_.push_back(name);
        }
    }

    [[nodiscard]] bool ok() const { return factors_.empty(); }

    void throw_if_any() const
    {
        if (!factors_.empty()) {
            throw AdmissibilityError(factors_);
        }
    }

private:
    std::vector<std::string> factors_;
};

} // namespace qladder
