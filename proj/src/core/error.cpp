#include "mvmap/error.hpp"

namespace mvmap {

const char* errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::NotPrime: return "NotPrime";
        case Errc::Reducible: return "Reducible";
        case Errc::TooLarge: return "TooLarge";
        case Errc::LogOfZero: return "LogOfZero";
        case Errc::NotPrimitive: return "NotPrimitive";
        case Errc::ResidueOutOfRange: return "ResidueOutOfRange";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::NonUnitBase: return "NonUnitBase";
        case Errc::DomainViolation: return "DomainViolation";
        case Errc::DomainNotFull: return "DomainNotFull";
        case Errc::Counterexample: return "Counterexample";
        case Errc::SNotDivisor: return "SNotDivisor";
        case Errc::NotUnitValued: return "NotUnitValued";
        case Errc::GcdNotOne: return "GcdNotOne";
        case Errc::Singular: return "Singular";
        case Errc::ConditionFails: return "ConditionFails";
        case Errc::NotPermutation: return "NotPermutation";
        case Errc::GVanishes: return "GVanishes";
        case Errc::BadLambda: return "BadLambda";
        case Errc::SigmaInLambda: return "SigmaInLambda";
        case Errc::DerivativeVanishes: return "DerivativeVanishes";
        case Errc::BadSeed: return "BadSeed";
        case Errc::GNotBijectiveOnCoset: return "GNotBijectiveOnCoset";
        case Errc::SizesMismatch: return "SizesMismatch";
        case Errc::TransferNotBijective: return "TransferNotBijective";
        case Errc::OrderWrong: return "OrderWrong";
        case Errc::HashNotInvariant: return "HashNotInvariant";
        case Errc::FZero: return "FZero";
        case Errc::NotInImage: return "NotInImage";
        case Errc::InverseNotExpressible: return "InverseNotExpressible";
        case Errc::RetryExhausted: return "RetryExhausted";
        case Errc::Parse: return "Parse";
        case Errc::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace mvmap
