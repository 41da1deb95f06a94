#pragma once

#include <stdexcept>
#include <string>

namespace ldpput {

/** Base class for every error raised by the library. */
class Error : public std::runtime_error
{
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define LDPPUT_DEFINE_ERROR(Name)                                   \
    class Name : public Error                                      \
    {                                                              \
    public:                                                        \
        explicit Name(const std::string& what = #Name)             \
            : Error(std::string(#Name) + ": " + what) {}           \
    }

// Input and format errors.
LDPPUT_DEFINE_ERROR(ParseError);
LDPPUT_DEFINE_ERROR(InvalidArgument);
LDPPUT_DEFINE_ERROR(AlphabetMismatch);

// groups
LDPPUT_DEFINE_ERROR(CapExceeded);
LDPPUT_DEFINE_ERROR(NotBijective);

// channels
LDPPUT_DEFINE_ERROR(NotStochastic);
LDPPUT_DEFINE_ERROR(WeightSumViolation);

// ldp_geometry / invariant
LDPPUT_DEFINE_ERROR(PolytopeViolation);
LDPPUT_DEFINE_ERROR(ZeroVector);
LDPPUT_DEFINE_ERROR(NotInCone);
LDPPUT_DEFINE_ERROR(NotLDP);
LDPPUT_DEFINE_ERROR(NotMaximal);
LDPPUT_DEFINE_ERROR(DecompositionInfeasible);
LDPPUT_DEFINE_ERROR(DimensionCap);
LDPPUT_DEFINE_ERROR(RepresentativeMismatch);
LDPPUT_DEFINE_ERROR(NotTransitive);
LDPPUT_DEFINE_ERROR(BadSubsetSize);

// decision / put_solver
LDPPUT_DEFINE_ERROR(UnsupportedF);
LDPPUT_DEFINE_ERROR(NoDSAExtension);
LDPPUT_DEFINE_ERROR(AuditFailure);
LDPPUT_DEFINE_ERROR(MethodDisagreement);

#undef LDPPUT_DEFINE_ERROR

} // namespace ldpput
