#pragma once

#include <stdexcept>
#include <string>

namespace hood {

/// Base of every error raised by the library. `kind()` is the stable
/// machine-readable tag used in CLI reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define HOOD_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& what) : Error(#Name, what) {}      \
    }

HOOD_DEFINE_ERROR(NotPrime);
HOOD_DEFINE_ERROR(ParseError);
HOOD_DEFINE_ERROR(PrimeMismatch);
HOOD_DEFINE_ERROR(DivisionByZero);
HOOD_DEFINE_ERROR(NonSquare);
HOOD_DEFINE_ERROR(ShapeMismatch);
HOOD_DEFINE_ERROR(Singular);
HOOD_DEFINE_ERROR(ZeroPolynomial);
HOOD_DEFINE_ERROR(DuplicatePrime);
HOOD_DEFINE_ERROR(DimensionMismatch);
HOOD_DEFINE_ERROR(NotASublattice);
HOOD_DEFINE_ERROR(InvalidArgument);
HOOD_DEFINE_ERROR(RingMismatch);
HOOD_DEFINE_ERROR(IncompatibleEndo);
HOOD_DEFINE_ERROR(UnsupportedCase);
HOOD_DEFINE_ERROR(UnsupportedEndo);
HOOD_DEFINE_ERROR(BudgetExceeded);
HOOD_DEFINE_ERROR(MalformedDescriptor);
HOOD_DEFINE_ERROR(NotApplicable);
HOOD_DEFINE_ERROR(SchemaError);

#undef HOOD_DEFINE_ERROR

} // namespace hood
