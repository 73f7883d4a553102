#ifndef BDIV_TYPES_HPP
#define BDIV_TYPES_HPP

#include <boost/rational.hpp>
#include <map>
#include <stdexcept>
#include <string>

namespace bdiv {

using Symbol = std::string;
using Int = long long;
using Rat = boost::rational<Int>;

// Finitely supported coefficient map (curve or branch id -> coefficient).
// Entries with value 0 are never stored.
using Coeffs = std::map<Symbol, Int>;

inline Int coeff_of(const Coeffs& c, const Symbol& id) {
    auto it = c.find(id);
    return it == c.end() ? 0 : it->second;
}

inline void set_coeff(Coeffs& c, const Symbol& id, Int v) {
    if (v == 0)
        c.erase(id);
    else
        c[id] = v;
}

inline void add_coeff(Coeffs& c, const Symbol& id, Int v) {
    set_coeff(c, id, coeff_of(c, id) + v);
}

enum class Err {
    DuplicateId,
    TripleIncidence,
    UnknownCurveRef,
    UnknownBranch,
    IllegalIncidence,
    ModelMismatch,
    SupportOffD,
    NotXDBDivisor,
    NotAdmissible,
    PoleOffD,
    InvalidConnection,
    ResolutionBudgetExceeded,
    PointOffD,
    PointNotSmoothOnD,
    TurningOutsideZeroLocus,
    ParseError,
    ValidationError,
};

inline const char* err_name(Err e) {
    switch (e) {
        case Err::DuplicateId: return "DuplicateId";
        case Err::TripleIncidence: return "TripleIncidence";
        case Err::UnknownCurveRef: return "UnknownCurveRef";
        case Err::UnknownBranch: return "UnknownBranch";
        case Err::IllegalIncidence: return "IllegalIncidence";
        case Err::ModelMismatch: return "ModelMismatch";
        case Err::SupportOffD: return "SupportOffD";
        case Err::NotXDBDivisor: return "NotXDBDivisor";
        case Err::NotAdmissible: return "NotAdmissible";
        case Err::PoleOffD: return "PoleOffD";
        case Err::InvalidConnection: return "InvalidConnection";
        case Err::ResolutionBudgetExceeded: return "ResolutionBudgetExceeded";
        case Err::PointOffD: return "PointOffD";
        case Err::PointNotSmoothOnD: return "PointNotSmoothOnD";
        case Err::TurningOutsideZeroLocus: return "TurningOutsideZeroLocus";
        case Err::ParseError: return "ParseError";
        case Err::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

class CalcError : public std::runtime_error {
public:
    CalcError(Err code, const std::string& what)
        : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

}  // namespace bdiv

#endif
