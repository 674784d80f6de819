#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvmap {

using Value = std::uint64_t;

enum class Errc {
    NotPrime,
    Reducible,
    TooLarge,
    LogOfZero,
    NotPrimitive,
    ResidueOutOfRange,
    InvalidArgument,
    NonUnitBase,
    DomainViolation,
    DomainNotFull,
    Counterexample,
    SNotDivisor,
    NotUnitValued,
    GcdNotOne,
    Singular,
    ConditionFails,
    NotPermutation,
    GVanishes,
    BadLambda,
    SigmaInLambda,
    DerivativeVanishes,
    BadSeed,
    GNotBijectiveOnCoset,
    SizesMismatch,
    TransferNotBijective,
    OrderWrong,
    HashNotInvariant,
    FZero,
    NotInImage,
    InverseNotExpressible,
    RetryExhausted,
    Parse,
    Io,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Error(Errc code, const std::string& what, std::vector<Value> witness)
        : std::runtime_error(what), code_(code), witness_(std::move(witness)) {}

    Errc code() const noexcept { return code_; }
    const std::vector<Value>& witness() const noexcept { return witness_; }

private:
    Errc code_;
    std::vector<Value> witness_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace mvmap
